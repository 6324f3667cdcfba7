#include "epower/ensembles.hpp"

#include "epower/epower.hpp"
#include "epower/gates.hpp"
#include "epower/parallel.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

using namespace epower;

namespace {

// Kolmogorov-Smirnov critical value at alpha = 0.01 is c / sqrt(n).
constexpr double kKsC001 = 1.628;

template <class Cdf>
double ks_statistic(std::vector<double> xs, Cdf cdf) {
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = cdf(xs[i]);
    d = std::max({d, (static_cast<double>(i) + 1.0) / n - f, f - static_cast<double>(i) / n});
  }
  return d;
}

}  // namespace

TEST_CASE("Haar samples are unitary and reproducible") {
  Rng a(RngSeed{41, 3});
  Rng b(RngSeed{41, 3});
  Rng c(RngSeed{41, 4});
  for (int d : {1, 2, 5, 8}) {
    const GateMatrix u = haar_unitary(d, a);
    CHECK(unitarity_residual(u.matrix()) < 1e-12);
    CHECK(u.matrix() == haar_unitary(d, b).matrix());
    const GateMatrix o = haar_orthogonal(d, a);
    CHECK(o.matrix().imag().isZero());
    CHECK(unitarity_residual(o.matrix()) < 1e-12);
    CHECK(o.matrix() == haar_orthogonal(d, b).matrix());
  }
  CHECK(haar_unitary(4, a).matrix() != haar_unitary(4, c).matrix());
  const GateMatrix diag = random_diagonal_unitary(SubsystemDims{2, 2, 2}, a);
  CHECK(Matrix(diag.matrix().diagonal().asDiagonal()) == diag.matrix());
  CHECK(RngSeed{5, 0}.substream(1).stream_id != RngSeed{5, 0}.substream(2).stream_id);
}

TEST_CASE("Haar unitary entries have the invariant distribution") {
  // |U_00|^2 ~ Beta(1, d-1), CDF 1 - (1 - x)^(d-1); the same holds after a fixed rotation
  Rng rng(RngSeed{42, 0});
  const int d = 4;
  const std::size_t n = 4000;
  const Matrix v = haar_unitary(d, rng).matrix();
  std::vector<double> plain, rotated;
  for (std::size_t k = 0; k < n; ++k) {
    const Matrix u = haar_unitary(d, rng).matrix();
    plain.push_back(std::norm(u(0, 0)));
    rotated.push_back(std::norm((v * u)(1, 2)));
  }
  auto cdf = [&](double x) { return 1.0 - std::pow(1.0 - x, d - 1); };
  CHECK(ks_statistic(plain, cdf) * std::sqrt(static_cast<double>(n)) < kKsC001);
  CHECK(ks_statistic(rotated, cdf) * std::sqrt(static_cast<double>(n)) < kKsC001);
}

TEST_CASE("Haar orthogonal entries have the invariant distribution") {
  // on the unit sphere in R^3 each coordinate is uniform on [-1, 1], so P(O_00^2 <= x) = sqrt(x)
  Rng rng(RngSeed{43, 0});
  const std::size_t n = 4000;
  const Matrix v = haar_orthogonal(3, rng).matrix();
  std::vector<double> plain, rotated;
  for (std::size_t k = 0; k < n; ++k) {
    const Matrix o = haar_orthogonal(3, rng).matrix();
    plain.push_back(std::norm(o(0, 0)));
    rotated.push_back(std::norm((o * v)(2, 1)));
  }
  auto cdf = [](double x) { return std::sqrt(std::clamp(x, 0.0, 1.0)); };
  CHECK(ks_statistic(plain, cdf) * std::sqrt(static_cast<double>(n)) < kKsC001);
  CHECK(ks_statistic(rotated, cdf) * std::sqrt(static_cast<double>(n)) < kKsC001);
}

TEST_CASE("low moments of Haar unitaries") {
  Rng rng(RngSeed{44, 0});
  const int d = 3;
  const std::size_t n = 20000;
  RunningStats second, fourth;
  for (std::size_t k = 0; k < n; ++k) {
    const Matrix u = haar_unitary(d, rng).matrix();
    second.add(std::norm(u(1, 2)));
    fourth.add(std::norm(u(1, 2)) * std::norm(u(1, 2)));
  }
  CHECK(std::abs(second.mean() - 1.0 / d) < 4.0 * second.std_error());
  CHECK(std::abs(fourth.mean() - 2.0 / (d * (d + 1))) < 4.0 * fourth.std_error());
}

TEST_CASE("Weingarten evaluators") {
  for (int d = 2; d <= 8; ++d) {
    CHECK(unitary_second_moment({Group::Unitary, d, {0, 0, 0, 0}, {0, 0, 0, 0}}) == Rational(2, d * (d + 1)));
    CHECK(orthogonal_fourth_moment({Group::Orthogonal, d, {0, 0, 0, 0}, {0, 0, 0, 0}}) == Rational(3, d * (d + 2)));
    CHECK(unitary_second_moment({Group::Unitary, d, {0, 0, 1, 1}, {0, 0, 1, 1}}) == Rational(1, d * d - 1));
    CHECK(unitary_second_moment({Group::Unitary, d, {0, 1, 0, 1}, {0, 0, 0, 0}}) == 0);
    CHECK(orthogonal_fourth_moment({Group::Orthogonal, d, {0, 0, 1, 1}, {0, 0, 0, 0}}) == Rational(1, d * (d + 2)));
  }
  CHECK_THROWS_AS(unitary_second_moment({Group::Unitary, 1, {0, 0, 0, 0}, {0, 0, 0, 0}}), UnsupportedError);
  CHECK_THROWS_AS(unitary_second_moment({Group::Unitary, 3, {0, 0, 3, 0}, {0, 0, 0, 0}}), ArgumentError);
  CHECK_THROWS_AS(orthogonal_fourth_moment({Group::Unitary, 3, {0, 0, 0, 0}, {0, 0, 0, 0}}), ArgumentError);

  // Monte Carlo cross-check on a few mixed specs
  Rng rng(RngSeed{45, 0});
  const std::vector<MomentSpec> specs{{Group::Unitary, 3, {0, 1, 1, 0}, {2, 2, 1, 1}},
                                      {Group::Unitary, 3, {0, 0, 1, 1}, {0, 1, 1, 0}},
                                      {Group::Orthogonal, 3, {0, 1, 0, 1}, {0, 0, 1, 1}},
                                      {Group::Orthogonal, 3, {0, 0, 1, 1}, {2, 2, 2, 2}}};
  for (const auto& spec : specs) {
    RunningStats re;
    for (int k = 0; k < 40000; ++k) {
      const Matrix g = spec.group == Group::Unitary ? haar_unitary(3, rng).matrix() : haar_orthogonal(3, rng).matrix();
      re.add(moment_integrand(spec, g).real());
    }
    const double exact = to_double(spec.group == Group::Unitary ? unitary_second_moment(spec)
                                                                : orthogonal_fourth_moment(spec));
    CHECK(std::abs(re.mean() - exact) < 4.0 * re.std_error());
  }
}

TEST_CASE("permutation enumeration") {
  const PermutationMatrices perms(SubsystemDims{2, 2});
  CHECK(perms.size() == 24);
  std::set<std::vector<int>> seen;
  std::uint64_t rank = 0;
  for (auto it = perms.begin(); it != perms.end(); ++it, ++rank) {
    CHECK(it.permutation() == nth_permutation(4, rank));
    seen.insert(it.permutation());
    const GateMatrix p = *it;
    CHECK(p.matrix().cwiseAbs().colwise().sum().isOnes());
  }
  CHECK(rank == 24);
  CHECK(seen.size() == 24);
  CHECK((*perms.begin()).matrix().isIdentity());
  CHECK_THROWS_AS(PermutationMatrices(11), UnsupportedError);
  CHECK_THROWS_AS(nth_permutation(3, 6), ArgumentError);
  const std::vector<int> bad{0, 0, 1, 2};
  CHECK_THROWS_AS(permutation_matrix(bad, SubsystemDims{4}), ArgumentError);
  // P(perm[j], j) = 1 sends |j> to |perm[j]>
  const std::vector<int> cyc{1, 2, 0};
  CHECK(permutation_matrix(cyc, SubsystemDims{3}).matrix()(1, 0) == Complex(1.0));
}

TEST_CASE("running statistics merge like a single pass") {
  Rng rng(RngSeed{46, 0});
  RunningStats all, left, right;
  for (int k = 0; k < 1000; ++k) {
    const double x = rng.normal() * 3.0 + 1.0;
    all.add(x);
    (k < 377 ? left : right).add(x);
  }
  left.merge(right);
  CHECK(left.count() == all.count());
  CHECK(left.mean() == doctest::Approx(all.mean()).epsilon(1e-12));
  CHECK(left.sample_variance() == doctest::Approx(all.sample_variance()).epsilon(1e-12));
  RunningStats empty;
  empty.merge(all);
  CHECK(empty.mean() == all.mean());
}

TEST_CASE("Monte Carlo entangling power") {
  const McEstimate e = mc_entangling_power(toffoli(), 20000, RngSeed{7, 0});
  CHECK(e.samples == 20000);
  CHECK(e.std_error < 0.01);
  CHECK(std::abs(e.estimate - 10.0 / 27.0) < 4.0 * e.std_error);
  const McEstimate again = mc_entangling_power(toffoli(), 20000, RngSeed{7, 0});
  CHECK(again.estimate == e.estimate);
  CHECK(again.std_error == e.std_error);
  CHECK_THROWS_AS(mc_entangling_power(toffoli(), 1, RngSeed{}), ArgumentError);
  CHECK_THROWS_AS(mc_entangling_power(identity_gate(SubsystemDims{4}), 10, RngSeed{}), ArgumentError);
}

TEST_CASE("parallel_for runs every index and propagates errors") {
  std::vector<int> hits(100, 0);
  parallel_for(hits.size(), [&](std::size_t i) { hits[i] += 1; });
  CHECK(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }));
  CHECK_THROWS_AS(parallel_for(10, [](std::size_t i) {
                    if (i == 3) throw ArgumentError("boom");
                  }),
                  ArgumentError);
  CHECK(worker_count() >= 1);
}
