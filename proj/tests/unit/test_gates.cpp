#include "epower/gates.hpp"

#include "epower/ensembles.hpp"
#include "epower/entanglement.hpp"
#include "epower/epower.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace epower;

namespace {

constexpr double kPi = std::numbers::pi;

double eps(const GateMatrix& g) { return epower_one_tangle(g).total; }

}  // namespace

TEST_CASE("named gates are permutations or rotations of the expected rows") {
  const Matrix t = toffoli().matrix();
  CHECK(t(7, 6) == Complex(1.0));
  CHECK(t(6, 7) == Complex(1.0));
  CHECK(t.topLeftCorner(6, 6).isIdentity());
  const Matrix f = fredkin().matrix();
  CHECK(f(5, 6) == Complex(1.0));
  CHECK(f(6, 5) == Complex(1.0));
  CHECK(f(7, 7) == Complex(1.0));
  CHECK(deutsch(kPi / 2).matrix().isApprox(toffoli().matrix(), 1e-15));
  CHECK((h_u8().matrix() * h_u8().matrix()).isIdentity(1e-12));
  CHECK(h_u8().matrix().isApprox(h_u8().matrix().transpose()));
  CHECK((h_u8().matrix().cwiseAbs().array() - 1.0 / std::sqrt(8.0)).abs().maxCoeff() < 1e-15);
  const Vector hd = h_d8().matrix().diagonal();
  const double expected[8] = {1, 1, 1, -1, 1, -1, -1, -1};
  for (int k = 0; k < 8; ++k) CHECK(hd(k) == Complex(expected[k]));
}

TEST_CASE("named gate entangling powers") {
  CHECK(eps(fredkin()) == doctest::Approx(10.0 / 27.0).epsilon(1e-12));
  CHECK(eps(toffoli()) == doctest::Approx(10.0 / 27.0).epsilon(1e-12));
  CHECK(eps(deutsch(0.0)) == doctest::Approx(4.0 / 27.0).epsilon(1e-12));
  CHECK(eps(deutsch(kPi / 2)) == doctest::Approx(10.0 / 27.0).epsilon(1e-12));
  for (int k = 0; k < 10; ++k) {
    const double theta = 0.37 * k;
    CHECK(eps(deutsch(theta)) == doctest::Approx((7.0 - 3.0 * std::cos(2.0 * theta)) / 27.0).epsilon(1e-12));
  }
  CHECK(eps(h_d8()) == doctest::Approx(16.0 / 27.0).epsilon(1e-12));
  CHECK(eps(h_u8()) == doctest::Approx(8.0 / 9.0).epsilon(1e-12));
  CHECK(is_ame(choi_state(h_u8())).is_ame);
}

TEST_CASE("G_n family") {
  CHECK(gn_coefficient(3) == Rational(10, 27) / 2);
  CHECK(epower_gn_closed(3, kPi) == doctest::Approx(10.0 / 27.0));
  CHECK(std::abs(eps(g_n(3, 0.0))) < 1e-14);
  CHECK(g_n(4, 0.0).matrix().isIdentity());
  for (int n = 2; n <= 5; ++n) {
    for (double alpha : {0.3, 1.0, 2.2, kPi}) {
      CAPTURE(n);
      CAPTURE(alpha);
      CHECK(eps(g_n(n, alpha)) == doctest::Approx(epower_gn_closed(n, alpha)).epsilon(1e-12));
    }
  }
  CHECK(eps(g_n(2, kPi)) == doctest::Approx(oracle::design_epower(g_n(2, kPi).matrix(), {2, 2})).epsilon(1e-12));
  CHECK_THROWS_AS(g_n(1, 0.5), ArgumentError);
}

TEST_CASE("diagonal closed form") {
  DiagonalPhases zero{};
  CHECK(diagonal_gate(zero).matrix().isIdentity());
  DiagonalPhases flat;
  flat.fill(1.3);
  CHECK(std::abs(epower_diagonal_closed(flat)) < 1e-14);
  const DiagonalPhases hd{0, 0, 0, kPi, 0, kPi, kPi, kPi};
  CHECK(epower_diagonal_closed(hd) == doctest::Approx(16.0 / 27.0));

  Rng rng(RngSeed{51, 0});
  for (int trial = 0; trial < 20; ++trial) {
    DiagonalPhases phis;
    for (double& p : phis) p = 2.0 * kPi * rng.uniform();
    CHECK(epower_diagonal_closed(phis) == doctest::Approx(eps(diagonal_gate(phis))).epsilon(1e-12));

    OmegaDelta od;
    for (double& w : od.omegas) w = 2.0 * kPi * rng.uniform();
    for (double& x : od.deltas) x = 2.0 * kPi * rng.uniform();
    const double via_deltas = epower_diagonal_deltas(od.deltas);
    CHECK(via_deltas == doctest::Approx(epower_diagonal_closed(phases_from(od))).epsilon(1e-12));
    CHECK(via_deltas == doctest::Approx(eps(diagonal_gate(od))).epsilon(1e-12));

    // gradient against central differences
    const auto g = epower_diagonal_deltas_gradient(od.deltas);
    for (std::size_t a = 0; a < 3; ++a) {
      auto up = od.deltas, down = od.deltas;
      up[a] += 1e-6;
      down[a] -= 1e-6;
      const double fd = (epower_diagonal_deltas(up) - epower_diagonal_deltas(down)) / 2e-6;
      CHECK(g[a] == doctest::Approx(fd).epsilon(1e-6).scale(1.0));
    }
  }
  CHECK(std::abs(epower_diagonal_deltas({0.0, 0.0, 0.0})) < 1e-15);
  CHECK(epower_diagonal_deltas({kPi, 0.0, 0.0}) == doctest::Approx(16.0 / 27.0));
  CHECK(epower_diagonal_deltas({kPi, kPi, kPi}) == doctest::Approx(40.0 / 81.0));
}

TEST_CASE("random gates stay below the three-qubit maximum") {
  Rng rng(RngSeed{52, 0});
  for (int k = 0; k < 50; ++k) CHECK(eps(haar_unitary(SubsystemDims{2, 2, 2}, rng)) <= 8.0 / 9.0 + 1e-10);
}
