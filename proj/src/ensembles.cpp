#include "epower/ensembles.hpp"

#include "epower/entanglement.hpp"
#include "epower/parallel.hpp"
#include "epower/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace epower {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::seed_seq make_seed_seq(const RngSeed& s) {
  return std::seed_seq{static_cast<std::uint32_t>(s.seed), static_cast<std::uint32_t>(s.seed >> 32),
                       static_cast<std::uint32_t>(s.stream_id),
                       static_cast<std::uint32_t>(s.stream_id >> 32)};
}

void check_moment_spec(const MomentSpec& spec, Group expected) {
  if (spec.group != expected) throw ArgumentError("moment spec has the wrong group");
  if (spec.d < 2) throw UnsupportedError("moment formulas need d >= 2");
  for (int k = 0; k < 4; ++k) {
    const auto uk = static_cast<std::size_t>(k);
    if (spec.rows[uk] < 0 || spec.rows[uk] >= spec.d || spec.cols[uk] < 0 || spec.cols[uk] >= spec.d) {
      throw ArgumentError("moment index out of range for d = " + std::to_string(spec.d));
    }
  }
}

}  // namespace

RngSeed RngSeed::substream(std::uint64_t k) const {
  return {seed, splitmix64(stream_id ^ splitmix64(k + 1))};
}

Rng::Rng(RngSeed seed) {
  auto seq = make_seed_seq(seed);
  engine_.seed(seq);
}

GateMatrix haar_unitary(const SubsystemDims& dims, Rng& rng) {
  const Index n = dims.total();
  Matrix g(n, n);
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < n; ++i) g(i, j) = rng.complex_normal();
  }
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix& r = qr.matrixQR();
  for (Index k = 0; k < n; ++k) {
    const Complex rkk = r(k, k);
    const double mag = std::abs(rkk);
    q.col(k) *= mag > 0.0 ? rkk / mag : Complex(1.0);
  }
  return GateMatrix(std::move(q), dims);
}

GateMatrix haar_unitary(int d, Rng& rng) { return haar_unitary(SubsystemDims{d}, rng); }

GateMatrix haar_orthogonal(const SubsystemDims& dims, Rng& rng) {
  const Index n = dims.total();
  Eigen::MatrixXd g(n, n);
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < n; ++i) g(i, j) = rng.normal();
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ();
  const Eigen::MatrixXd& r = qr.matrixQR();
  for (Index k = 0; k < n; ++k) {
    if (r(k, k) < 0.0) q.col(k) *= -1.0;
  }
  return GateMatrix(q.cast<Complex>(), dims);
}

GateMatrix haar_orthogonal(int d, Rng& rng) { return haar_orthogonal(SubsystemDims{d}, rng); }

GateMatrix random_diagonal_unitary(const SubsystemDims& dims, Rng& rng) {
  const Index n = dims.total();
  Vector diag(n);
  for (Index k = 0; k < n; ++k) diag(k) = std::polar(1.0, 2.0 * std::numbers::pi * rng.uniform());
  return GateMatrix(diag.asDiagonal().toDenseMatrix(), dims);
}

GateMatrix random_diagonal_unitary(int d, Rng& rng) {
  return random_diagonal_unitary(SubsystemDims{d}, rng);
}

GateMatrix permutation_matrix(std::span<const int> perm, SubsystemDims dims) {
  const Index n = dims.total();
  if (static_cast<Index>(perm.size()) != n) throw ArgumentError("permutation length mismatch");
  std::vector<bool> seen(perm.size(), false);
  Matrix p = Matrix::Zero(n, n);
  for (Index j = 0; j < n; ++j) {
    const int target = perm[static_cast<std::size_t>(j)];
    if (target < 0 || target >= n || seen[static_cast<std::size_t>(target)]) {
      throw ArgumentError("not a permutation");
    }
    seen[static_cast<std::size_t>(target)] = true;
    p(target, j) = 1.0;
  }
  return GateMatrix(std::move(p), std::move(dims));
}

std::uint64_t factorial(int d) {
  if (d < 0 || d > 20) throw ArgumentError("factorial argument out of range");
  std::uint64_t out = 1;
  for (int k = 2; k <= d; ++k) out *= static_cast<std::uint64_t>(k);
  return out;
}

std::vector<int> nth_permutation(int d, std::uint64_t rank) {
  if (rank >= factorial(d)) throw ArgumentError("permutation rank out of range");
  std::vector<int> pool(static_cast<std::size_t>(d));
  std::iota(pool.begin(), pool.end(), 0);
  std::vector<int> out;
  out.reserve(pool.size());
  for (int k = d; k >= 1; --k) {
    const std::uint64_t block = factorial(k - 1);
    const auto pick = static_cast<std::ptrdiff_t>(rank / block);
    rank %= block;
    out.push_back(pool[static_cast<std::size_t>(pick)]);
    pool.erase(pool.begin() + pick);
  }
  return out;
}

PermutationMatrices::PermutationMatrices(SubsystemDims dims) : dims_(std::move(dims)) {
  if (dims_.total() > kMaxPermutationDim) {
    throw UnsupportedError("permutation enumeration limited to dimension " +
                           std::to_string(kMaxPermutationDim));
  }
}

PermutationMatrices::PermutationMatrices(int d) : PermutationMatrices(SubsystemDims{d}) {}

PermutationMatrices::iterator::iterator(const SubsystemDims* dims, bool done)
    : dims_(dims), perm_(static_cast<std::size_t>(dims->total())), done_(done) {
  std::iota(perm_.begin(), perm_.end(), 0);
}

PermutationMatrices::iterator& PermutationMatrices::iterator::operator++() {
  if (!done_ && !std::next_permutation(perm_.begin(), perm_.end())) done_ = true;
  return *this;
}

PureState random_product_state(const SubsystemDims& dims, Rng& rng) {
  std::vector<Vector> locals;
  locals.reserve(static_cast<std::size_t>(dims.parties()));
  for (int d : dims.values()) {
    Vector v(d);
    for (int k = 0; k < d; ++k) v(k) = rng.complex_normal();
    v.normalize();
    locals.push_back(std::move(v));
  }
  return PureState::normalized(kron_all(locals), dims);
}

void RunningStats::add(double x) {
  ++n_;
  const double delta = x - mean_;
  mean_ += delta / static_cast<double>(n_);
  m2_ += delta * (x - mean_);
}

void RunningStats::merge(const RunningStats& other) {
  if (other.n_ == 0) return;
  if (n_ == 0) {
    *this = other;
    return;
  }
  const double na = static_cast<double>(n_);
  const double nb = static_cast<double>(other.n_);
  const double delta = other.mean_ - mean_;
  const double total = na + nb;
  mean_ += delta * nb / total;
  m2_ += other.m2_ + delta * delta * na * nb / total;
  n_ += other.n_;
}

double RunningStats::std_error() const {
  return n_ > 1 ? std::sqrt(sample_variance() / static_cast<double>(n_)) : 0.0;
}

McEstimate mc_entangling_power(const GateMatrix& gate, std::size_t n_samples, RngSeed seed) {
  if (n_samples < 2) throw ArgumentError("Monte Carlo estimate needs at least two samples");
  if (gate.dims().parties() < 2) throw ArgumentError("entangling power needs at least two parties");
  std::vector<RunningStats> shards(kMcShards);
  parallel_for(kMcShards, [&](std::size_t shard) {
    const std::size_t begin = shard * n_samples / kMcShards;
    const std::size_t end = (shard + 1) * n_samples / kMcShards;
    Rng rng(seed.substream(shard));
    RunningStats& stats = shards[shard];
    for (std::size_t i = begin; i < end; ++i) {
      stats.add(one_tangle(apply_gate(gate, random_product_state(gate.dims(), rng))));
    }
  });
  RunningStats total;
  for (const auto& s : shards) total.merge(s);
  return {total.mean(), total.std_error(), total.count()};
}

Rational unitary_second_moment(const MomentSpec& spec) {
  check_moment_spec(spec, Group::Unitary);
  const auto& i = spec.rows;  // i1, i1', i2, i2'
  const auto& j = spec.cols;  // j1, j1', j2, j2'
  auto delta = [](int a, int b) { return a == b ? 1 : 0; };
  const int rows_direct = delta(i[0], i[1]) * delta(i[2], i[3]);
  const int rows_crossed = delta(i[0], i[3]) * delta(i[2], i[1]);
  const int cols_direct = delta(j[1], j[0]) * delta(j[3], j[2]);
  const int cols_crossed = delta(j[3], j[0]) * delta(j[1], j[2]);
  const long d = spec.d;
  const long numer = d * (rows_direct * cols_direct + rows_crossed * cols_crossed) -
                     (rows_direct * cols_crossed + rows_crossed * cols_direct);
  return Rational(numer, d * (d * d - 1));
}

Rational orthogonal_fourth_moment(const MomentSpec& spec) {
  check_moment_spec(spec, Group::Orthogonal);
  // The three pair partitions of {0,1,2,3}: (01)(23), (02)(13), (03)(12).
  static constexpr std::array<std::array<int, 4>, 3> kPairings{{{0, 1, 2, 3}, {0, 2, 1, 3}, {0, 3, 1, 2}}};
  auto paired = [](const std::array<int, 4>& idx, const std::array<int, 4>& p) {
    return idx[static_cast<std::size_t>(p[0])] == idx[static_cast<std::size_t>(p[1])] &&
           idx[static_cast<std::size_t>(p[2])] == idx[static_cast<std::size_t>(p[3])];
  };
  const long d = spec.d;
  const long denom = d * (d - 1) * (d + 2);
  const Rational wg_same(d + 1, denom);
  const Rational wg_diff(-1, denom);
  Rational out = 0;
  for (std::size_t q = 0; q < 3; ++q) {
    if (!paired(spec.rows, kPairings[q])) continue;
    for (std::size_t r = 0; r < 3; ++r) {
      if (!paired(spec.cols, kPairings[r])) continue;
      out += q == r ? wg_same : wg_diff;
    }
  }
  return out;
}

Complex moment_integrand(const MomentSpec& spec, const Matrix& sample) {
  const auto& r = spec.rows;
  const auto& c = spec.cols;
  if (spec.group == Group::Unitary) {
    return sample(r[0], c[0]) * std::conj(sample(r[1], c[1])) * sample(r[2], c[2]) *
           std::conj(sample(r[3], c[3]));
  }
  return sample(r[0], c[0]) * sample(r[1], c[1]) * sample(r[2], c[2]) * sample(r[3], c[3]);
}

}  // namespace epower
