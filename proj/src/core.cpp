#include "epower/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace epower {

PartyMask mask_of(std::initializer_list<int> parties) {
  return mask_of(std::span<const int>(parties.begin(), parties.size()));
}

PartyMask mask_of(std::span<const int> parties) {
  PartyMask mask = 0;
  for (int p : parties) {
    if (p < 0 || p >= 32) {
      throw ArgumentError("party index " + std::to_string(p) + " out of range");
    }
    mask |= PartyMask{1} << p;
  }
  return mask;
}

std::vector<int> parties_of(PartyMask mask) {
  std::vector<int> out;
  for (int p = 0; mask != 0; ++p, mask >>= 1) {
    if (mask & 1U) out.push_back(p);
  }
  return out;
}

SubsystemDims::SubsystemDims(std::vector<int> dims) : dims_(std::move(dims)) {
  if (dims_.empty()) throw ArgumentError("SubsystemDims needs at least one party");
  if (static_cast<int>(dims_.size()) > 2 * kMaxParties) {
    throw ArgumentError("too many parties: " + std::to_string(dims_.size()));
  }
  for (int d : dims_) {
    if (d < 1) throw ArgumentError("local dimension must be >= 1, got " + std::to_string(d));
    total_ *= d;
  }
}

SubsystemDims::SubsystemDims(std::initializer_list<int> dims)
    : SubsystemDims(std::vector<int>(dims)) {}

SubsystemDims SubsystemDims::uniform(int n, int d) {
  if (n < 1) throw ArgumentError("need n >= 1 parties");
  return SubsystemDims(std::vector<int>(static_cast<std::size_t>(n), d));
}

Index SubsystemDims::product(PartyMask mask) const {
  Index out = 1;
  for (int p = 0; p < parties(); ++p) {
    if (mask & (PartyMask{1} << p)) out *= dims_[static_cast<std::size_t>(p)];
  }
  return out;
}

SubsystemDims SubsystemDims::doubled() const {
  std::vector<int> d = dims_;
  d.insert(d.end(), dims_.begin(), dims_.end());
  return SubsystemDims(std::move(d));
}

SubsystemDims SubsystemDims::select(PartyMask mask) const {
  std::vector<int> d;
  for (int p = 0; p < parties(); ++p) {
    if (mask & (PartyMask{1} << p)) d.push_back(dims_[static_cast<std::size_t>(p)]);
  }
  if (d.empty()) d.push_back(1);
  return SubsystemDims(std::move(d));
}

bool SubsystemDims::is_uniform() const {
  return std::all_of(dims_.begin(), dims_.end(), [&](int d) { return d == dims_.front(); });
}

std::string SubsystemDims::str() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < dims_.size(); ++i) {
    if (i) os << ',';
    os << dims_[i];
  }
  os << ']';
  return os.str();
}

PureState::PureState(Vector amplitudes, SubsystemDims dims)
    : amplitudes_(std::move(amplitudes)), dims_(std::move(dims)) {
  if (amplitudes_.size() != dims_.total()) {
    throw ArgumentError("state length " + std::to_string(amplitudes_.size()) +
                        " does not match dims " + dims_.str());
  }
  const double norm = amplitudes_.norm();
  if (!(std::abs(norm - 1.0) <= kNormTol)) {
    throw ValidationError("state is not normalized (norm " + std::to_string(norm) + ")");
  }
}

PureState::PureState(Vector amplitudes, SubsystemDims dims, Trusted)
    : amplitudes_(std::move(amplitudes)), dims_(std::move(dims)) {}

PureState PureState::normalized(Vector amplitudes, SubsystemDims dims) {
  if (amplitudes.size() != dims.total()) {
    throw ArgumentError("state length does not match dims " + dims.str());
  }
  const double norm = amplitudes.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) throw ValidationError("cannot normalize a zero vector");
  amplitudes /= norm;
  return PureState(std::move(amplitudes), std::move(dims), Trusted{});
}

PureState PureState::basis(std::span<const int> digits, SubsystemDims dims) {
  if (static_cast<int>(digits.size()) != dims.parties()) {
    throw ArgumentError("basis label length does not match dims " + dims.str());
  }
  Index flat = 0;
  for (int p = 0; p < dims.parties(); ++p) {
    const int digit = digits[static_cast<std::size_t>(p)];
    if (digit < 0 || digit >= dims[p]) throw std::out_of_range("basis digit out of range");
    flat = flat * dims[p] + digit;
  }
  Vector amps = Vector::Zero(dims.total());
  amps(flat) = 1.0;
  return PureState(std::move(amps), std::move(dims), Trusted{});
}

DensityOperator::DensityOperator(Matrix matrix, SubsystemDims dims)
    : matrix_(std::move(matrix)), dims_(std::move(dims)) {
  if (matrix_.rows() != matrix_.cols() || matrix_.rows() != dims_.total()) {
    throw ArgumentError("density matrix shape does not match dims " + dims_.str());
  }
  if ((matrix_ - matrix_.adjoint()).norm() > kHermTol) {
    throw ValidationError("density matrix is not Hermitian");
  }
  if (std::abs(matrix_.trace() - Complex(1.0)) > kNormTol) {
    throw ValidationError("density matrix does not have unit trace");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> eig(matrix_, Eigen::EigenvaluesOnly);
  if (eig.eigenvalues().minCoeff() < -kPsdTol) {
    throw ValidationError("density matrix is not positive semidefinite");
  }
}

DensityOperator::DensityOperator(Matrix matrix, SubsystemDims dims, Trusted)
    : matrix_(std::move(matrix)), dims_(std::move(dims)) {}

DensityOperator DensityOperator::assume_valid(Matrix matrix, SubsystemDims dims) {
  return DensityOperator(std::move(matrix), std::move(dims), Trusted{});
}

double unitarity_residual(const Matrix& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  return (m.adjoint() * m - Matrix::Identity(m.rows(), m.cols())).norm();
}

GateMatrix::GateMatrix(Matrix matrix, SubsystemDims dims)
    : matrix_(std::move(matrix)), dims_(std::move(dims)) {
  if (matrix_.rows() != matrix_.cols() || matrix_.rows() != dims_.total()) {
    throw ArgumentError("gate of shape " + std::to_string(matrix_.rows()) + "x" +
                        std::to_string(matrix_.cols()) + " does not match dims " + dims_.str());
  }
  const double residual = unitarity_residual(matrix_);
  if (!(residual <= kUnitaryTol)) {
    throw ValidationError("gate is not unitary (residual " + std::to_string(residual) + ")");
  }
}

GateMatrix GateMatrix::with_dims(SubsystemDims dims) const {
  if (dims.total() != dims_.total()) {
    throw ArgumentError("cannot reinterpret " + dims_.str() + " gate as " + dims.str());
  }
  GateMatrix out = *this;
  out.dims_ = std::move(dims);
  return out;
}

}  // namespace epower
