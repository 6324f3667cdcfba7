#include "epower/entanglement.hpp"

#include "epower/ensembles.hpp"
#include "epower/tensor.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace epower;

TEST_CASE("canonical bipartition enumeration") {
  for (int n = 2; n <= 6; ++n) {
    const auto cuts = canonical_bipartitions(n);
    CHECK(cuts.size() == (std::size_t{1} << (n - 1)) - 1);
    for (const auto& c : cuts) CHECK(c.is_canonical());
    CHECK(enumerate_bipartitions(n, BipartitionMode::OrderedWithTrivial).size() == (std::size_t{1} << n));
  }
  const auto three = canonical_bipartitions(3);
  REQUIRE(three.size() == 3);
  CHECK(three[0].label() == "1|23");
  CHECK(three[1].label() == "12|3");
  CHECK(three[2].label() == "13|2");
}

TEST_CASE("one-tangle of standard states") {
  const SubsystemDims q3{2, 2, 2};
  Vector ghz = Vector::Zero(8);
  ghz(0) = ghz(7) = 1.0 / std::sqrt(2.0);
  CHECK(one_tangle(PureState(ghz, q3)) == doctest::Approx(1.0));

  Vector w = Vector::Zero(8);
  w(1) = w(2) = w(4) = 1.0 / std::sqrt(3.0);
  // every single-party reduction of W is diag(2/3, 1/3), purity 5/9
  CHECK(one_tangle(PureState(w, q3)) == doctest::Approx(8.0 / 9.0));

  const PureState prod = PureState::basis(std::vector<int>{0, 1, 1}, q3);
  CHECK(one_tangle(prod) == doctest::Approx(0.0));

  Vector bell = Vector::Zero(4);
  bell(0) = bell(3) = 1.0 / std::sqrt(2.0);
  CHECK(one_tangle(PureState(bell, SubsystemDims{2, 2})) == doctest::Approx(1.0));
  CHECK_THROWS_AS(one_tangle(PureState::normalized(Vector::Ones(2), SubsystemDims{2})), ArgumentError);
}

TEST_CASE("one-tangle agrees with the brute-force oracle and is LU invariant") {
  Rng rng(RngSeed{21, 0});
  const std::vector<std::vector<int>> shapes{{2, 2, 2}, {2, 3}, {2, 2, 3}, {3, 2, 2, 2}};
  for (const auto& shape : shapes) {
    const SubsystemDims dims(shape);
    for (int trial = 0; trial < 5; ++trial) {
      Vector v(dims.total());
      for (Index k = 0; k < v.size(); ++k) v(k) = rng.complex_normal();
      const PureState psi = PureState::normalized(v, dims);
      const double t = one_tangle(psi);
      CHECK(t == doctest::Approx(oracle::one_tangle(psi.amplitudes(), shape)).epsilon(1e-12));
      const PureState moved = PureState::normalized(oracle::local_unitary(shape, rng) * psi.amplitudes(), dims);
      CHECK(one_tangle(moved) == doctest::Approx(t).epsilon(1e-10));
      for (const auto& cut : canonical_bipartitions(dims.parties())) {
        const double g = generalized_concurrence(psi, cut);
        CHECK(g >= -1e-12);
        CHECK(g <= concurrence_upper_bound(dims, cut) + 1e-12);
      }
    }
  }
}

TEST_CASE("AME detection") {
  Vector bell = Vector::Zero(4);
  bell(0) = bell(3) = 1.0 / std::sqrt(2.0);
  CHECK(is_ame(PureState(bell, SubsystemDims{2, 2})).is_ame);

  Vector ghz = Vector::Zero(8);
  ghz(0) = ghz(7) = 1.0 / std::sqrt(2.0);
  CHECK(is_ame(PureState(ghz, SubsystemDims{2, 2, 2})).is_ame);

  // no AME(4,2) exists; the 4-qubit GHZ fails on two-party reductions
  Vector ghz4 = Vector::Zero(16);
  ghz4(0) = ghz4(15) = 1.0 / std::sqrt(2.0);
  const AmeReport r = is_ame(PureState(ghz4, SubsystemDims{2, 2, 2, 2}));
  CHECK_FALSE(r.is_ame);
  CHECK(r.worst_deviation == doctest::Approx(0.25));

  // AME(4,3) from the qutrit code |i, j, i+j, i+2j>
  Vector ame43 = Vector::Zero(81);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) ame43(((i * 3 + j) * 3 + (i + j) % 3) * 3 + (i + 2 * j) % 3) = 1.0 / 3.0;
  }
  CHECK(is_ame(PureState(ame43, SubsystemDims::uniform(4, 3))).is_ame);
  CHECK_THROWS_AS(is_ame(PureState(Vector::Unit(6, 0), SubsystemDims{2, 3})), ArgumentError);
}
