#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace epower {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Index = Eigen::Index;

/// Bit i selects party i (0-based). Party 0 is the leftmost ket label.
using PartyMask = std::uint32_t;

inline constexpr double kNormTol = 1e-10;
inline constexpr double kHermTol = 1e-10;
inline constexpr double kUnitaryTol = 1e-8;
inline constexpr double kPsdTol = 1e-9;

/// Upper limit on parties so that masks over the doubled (Choi) space fit in PartyMask.
inline constexpr int kMaxParties = 15;

class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Input parsed fine but violates a physical invariant (norm, unitarity, ...).
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnsupportedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

PartyMask mask_of(std::initializer_list<int> parties);
PartyMask mask_of(std::span<const int> parties);
inline PartyMask full_mask(int n) { return n >= 32 ? ~PartyMask{0} : (PartyMask{1} << n) - 1; }
std::vector<int> parties_of(PartyMask mask);

/// Local dimensions d_1..d_n of a tensor-product space.
class SubsystemDims {
 public:
  explicit SubsystemDims(std::vector<int> dims);
  SubsystemDims(std::initializer_list<int> dims);

  static SubsystemDims uniform(int n, int d);

  int parties() const { return static_cast<int>(dims_.size()); }
  int operator[](int party) const { return dims_[static_cast<std::size_t>(party)]; }
  std::span<const int> values() const { return dims_; }
  Index total() const { return total_; }

  /// Product of the dimensions of the selected parties (1 for the empty set).
  Index product(PartyMask mask) const;
  /// dims ++ dims, the layout of the Choi state.
  SubsystemDims doubled() const;
  SubsystemDims select(PartyMask mask) const;
  bool is_uniform() const;
  std::string str() const;

  friend bool operator==(const SubsystemDims&, const SubsystemDims&) = default;

 private:
  std::vector<int> dims_;
  Index total_ = 1;
};

class PureState {
 public:
  /// Throws ValidationError when the norm differs from 1 by more than kNormTol.
  PureState(Vector amplitudes, SubsystemDims dims);

  /// Rescales to unit norm; throws ValidationError on a zero vector.
  static PureState normalized(Vector amplitudes, SubsystemDims dims);
  static PureState basis(std::span<const int> digits, SubsystemDims dims);

  const Vector& amplitudes() const { return amplitudes_; }
  const SubsystemDims& dims() const { return dims_; }

 private:
  struct Trusted {};
  PureState(Vector amplitudes, SubsystemDims dims, Trusted);

  Vector amplitudes_;
  SubsystemDims dims_;
};

class DensityOperator {
 public:
  /// Validates hermiticity, unit trace and positivity.
  DensityOperator(Matrix matrix, SubsystemDims dims);

  /// Skips validation; for operators that hold the invariants by construction.
  static DensityOperator assume_valid(Matrix matrix, SubsystemDims dims);

  const Matrix& matrix() const { return matrix_; }
  const SubsystemDims& dims() const { return dims_; }

 private:
  struct Trusted {};
  DensityOperator(Matrix matrix, SubsystemDims dims, Trusted);

  Matrix matrix_;
  SubsystemDims dims_;
};

/// Frobenius norm of U^dagger U - 1.
double unitarity_residual(const Matrix& m);

class GateMatrix {
 public:
  /// Throws ArgumentError on shape mismatch and ValidationError when not unitary within kUnitaryTol.
  GateMatrix(Matrix matrix, SubsystemDims dims);

  const Matrix& matrix() const { return matrix_; }
  const SubsystemDims& dims() const { return dims_; }

  /// Same matrix, different tensor-product structure. Total dimension must agree.
  GateMatrix with_dims(SubsystemDims dims) const;

 private:
  Matrix matrix_;
  SubsystemDims dims_;
};

}  // namespace epower
