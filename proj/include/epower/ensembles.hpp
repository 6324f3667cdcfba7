#pragma once

#include "epower/core.hpp"
#include "epower/rational.hpp"

#include <array>
#include <cstdint>
#include <random>
#include <vector>

namespace epower {

/// Identifies a reproducible random stream. The generator behind it is
/// std::mt19937_64 seeded through std::seed_seq with the four 32-bit halves
/// of (seed, stream_id); sequences are bitwise reproducible within one build.
struct RngSeed {
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;

  /// Independent child stream k, used for sharded sampling.
  RngSeed substream(std::uint64_t k) const;
};

class Rng {
 public:
  explicit Rng(RngSeed seed);

  double normal() { return normal_(engine_); }
  /// Uniform on [0, 1).
  double uniform() { return uniform_(engine_); }
  /// Standard complex Gaussian with unit-variance real and imaginary parts.
  Complex complex_normal() { return {normal(), normal()}; }
  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

/// Haar-distributed unitary: QR of a complex Ginibre matrix with the phase of
/// each R_kk moved into the corresponding column of Q.
GateMatrix haar_unitary(const SubsystemDims& dims, Rng& rng);
GateMatrix haar_unitary(int d, Rng& rng);
/// Haar-distributed real orthogonal matrix (sign-corrected QR of a real Ginibre matrix).
GateMatrix haar_orthogonal(const SubsystemDims& dims, Rng& rng);
GateMatrix haar_orthogonal(int d, Rng& rng);
/// diag(e^{i phi_k}) with i.i.d. phases uniform on [0, 2 pi).
GateMatrix random_diagonal_unitary(const SubsystemDims& dims, Rng& rng);
GateMatrix random_diagonal_unitary(int d, Rng& rng);

inline constexpr int kMaxPermutationDim = 10;

/// P with P|j> = |perm[j]>.
GateMatrix permutation_matrix(std::span<const int> perm, SubsystemDims dims);
/// The rank-th permutation of 0..d-1 in lexicographic order.
std::vector<int> nth_permutation(int d, std::uint64_t rank);
std::uint64_t factorial(int d);

/// All d! permutation matrices, lexicographic in the permutation word; the
/// first one is the identity. Throws UnsupportedError for d > kMaxPermutationDim.
class PermutationMatrices {
 public:
  explicit PermutationMatrices(SubsystemDims dims);
  explicit PermutationMatrices(int d);

  class iterator {
   public:
    using value_type = GateMatrix;
    using difference_type = std::ptrdiff_t;

    GateMatrix operator*() const { return permutation_matrix(perm_, *dims_); }
    const std::vector<int>& permutation() const { return perm_; }
    iterator& operator++();
    bool operator==(const iterator& other) const { return done_ == other.done_ && (done_ || perm_ == other.perm_); }

   private:
    friend class PermutationMatrices;
    iterator(const SubsystemDims* dims, bool done);

    const SubsystemDims* dims_;
    std::vector<int> perm_;
    bool done_;
  };

  iterator begin() const { return iterator(&dims_, false); }
  iterator end() const { return iterator(&dims_, true); }
  std::uint64_t size() const { return factorial(static_cast<int>(dims_.total())); }
  const SubsystemDims& dims() const { return dims_; }

 private:
  SubsystemDims dims_;
};

/// Tensor product of independent normalized complex Gaussian local vectors.
PureState random_product_state(const SubsystemDims& dims, Rng& rng);

struct McEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
  std::size_t samples = 0;
};

/// Accumulates mean and variance (Welford); merge() is Chan's pairwise update.
class RunningStats {
 public:
  void add(double x);
  void merge(const RunningStats& other);
  std::size_t count() const { return n_; }
  double mean() const { return mean_; }
  double sample_variance() const { return n_ > 1 ? m2_ / static_cast<double>(n_ - 1) : 0.0; }
  double std_error() const;

 private:
  std::size_t n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

inline constexpr std::size_t kMcShards = 16;

/// Monte Carlo estimate of the mean one-tangle of U|psi> over random product
/// states. Work is split into kMcShards fixed shards (shard k draws from
/// seed.substream(k)) and merged in shard order, so the result does not
/// depend on the worker count.
McEstimate mc_entangling_power(const GateMatrix& gate, std::size_t n_samples, RngSeed seed);

enum class Group { Unitary, Orthogonal };

/// An entry-product moment of a Haar-random matrix.
///
/// Unitary: U(rows[0], cols[0]) conj(U(rows[1], cols[1])) U(rows[2], cols[2]) conj(U(rows[3], cols[3])).
/// Orthogonal: prod_k O(rows[k], cols[k]).
struct MomentSpec {
  Group group = Group::Unitary;
  int d = 2;
  std::array<int, 4> rows{};
  std::array<int, 4> cols{};
};

/// Exact second moment over U(d), d >= 2.
Rational unitary_second_moment(const MomentSpec& spec);
/// Exact fourth moment over O(d), d >= 2, from the orthogonal Weingarten
/// values Wg([1,1]) = (d+1)/(d(d-1)(d+2)) and Wg([2]) = -1/(d(d-1)(d+2)).
Rational orthogonal_fourth_moment(const MomentSpec& spec);
/// The integrand of the moment evaluated on one sample matrix.
Complex moment_integrand(const MomentSpec& spec, const Matrix& sample);

}  // namespace epower
