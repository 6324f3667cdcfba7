#include "epower/io.hpp"

#include "epower/ensembles.hpp"
#include "epower/gates.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>

using namespace epower;

TEST_CASE("doubles round-trip through text") {
  for (double x : {0.0, 1.0, -2.5, 1.0 / 3.0, 6.02e23, -1e-300, std::numbers::pi}) {
    CHECK(parse_double(format_double(x)) == x);
  }
  CHECK(format_double(0.5) == "0.5");
  CHECK_THROWS_AS(parse_double("1.5x"), ParseError);
  CHECK_THROWS_AS(parse_double(""), ParseError);
}

TEST_CASE("complex tokens") {
  CHECK(parse_complex("1+0j") == Complex(1.0, 0.0));
  CHECK(parse_complex("-0.5-2j") == Complex(-0.5, -2.0));
  CHECK(parse_complex("1e-3+2.5e+2j") == Complex(1e-3, 250.0));
  CHECK(parse_complex("-1E-3-1E-3j") == Complex(-1e-3, -1e-3));
  for (Complex z : {Complex(0.1, -0.2), Complex(-1e-17, 3.0), Complex(1.0 / 3.0, -1.0 / 7.0)}) {
    CHECK(parse_complex(format_complex(z)) == z);
  }
  CHECK_THROWS_AS(parse_complex("1.0"), ParseError);
  CHECK_THROWS_AS(parse_complex("1.0j"), ParseError);
  CHECK_THROWS_AS(parse_complex("1+-2j"), ParseError);
  CHECK_THROWS_AS(parse_complex("a+bj"), ParseError);
}

TEST_CASE("gate files round-trip") {
  Rng rng(RngSeed{61, 0});
  const GateMatrix u = haar_unitary(SubsystemDims{2, 3}, rng);
  const GateMatrix back = parse_gate_text(format_gate_text(u));
  CHECK(back.dims() == u.dims());
  CHECK(back.matrix() == u.matrix());
  const std::string text = "# comment\n\ndims: 2\n1+0j 0+0j\n\n0+0j 0+1j\n";
  const GateMatrix g = parse_gate_text(text);
  CHECK(g.matrix()(1, 1) == Complex(0.0, 1.0));
}

TEST_CASE("gate file errors") {
  CHECK_THROWS_AS(parse_gate_text(""), ParseError);
  CHECK_THROWS_AS(parse_gate_text("1+0j\n"), ParseError);
  CHECK_THROWS_AS(parse_gate_text("dims:\n"), ParseError);
  CHECK_THROWS_AS(parse_gate_text("dims: 0\n"), ParseError);
  CHECK_THROWS_AS(parse_gate_text("dims: x\n1+0j\n"), ParseError);
  CHECK_THROWS_AS(parse_gate_text("dims: 2\n1+0j 0+0j\n"), ParseError);
  CHECK_THROWS_AS(parse_gate_text("dims: 2\n1+0j 0+0j\n0+0j\n"), ParseError);
  CHECK_THROWS_AS(parse_gate_text("dims: 2\n1+0j 0+0j\n0+0j 1+0j\n1+0j 1+0j\n"), ParseError);
  CHECK_THROWS_AS(parse_gate_text("dims: 2\n1+0j 1+0j\n0+0j 1+0j\n"), ValidationError);
  CHECK_THROWS_AS(read_gate_file("/nonexistent/gate.txt"), ParseError);
}

TEST_CASE("builtin gate names") {
  CHECK(builtin_gate("toffoli").matrix() == toffoli().matrix());
  CHECK(builtin_gate("identity").dims() == SubsystemDims({2, 2, 2}));
  CHECK(builtin_gate("identity", SubsystemDims{3, 2}).dims() == SubsystemDims({3, 2}));
  CHECK(builtin_gate("swap", SubsystemDims{3, 3}).matrix() == swap_gate(3).matrix());
  CHECK(builtin_gate("deutsch:0.25").matrix() == deutsch(0.25).matrix());
  CHECK(builtin_gate("gn:4:1.5").matrix() == g_n(4, 1.5).matrix());
  CHECK(builtin_gate("diag:0,0,0,3.141592653589793,0,3.141592653589793,3.141592653589793,3.141592653589793")
            .matrix()
            .isApprox(h_d8().matrix(), 1e-15));
  CHECK(builtin_gate("h_u8", SubsystemDims{2, 4}).dims() == SubsystemDims({2, 4}));
  CHECK_THROWS_AS(builtin_gate("h_u8", SubsystemDims{3, 3}), ArgumentError);
  CHECK_THROWS_AS(builtin_gate("toffoli:1"), ParseError);
  CHECK_THROWS_AS(builtin_gate("deutsch"), ParseError);
  CHECK_THROWS_AS(builtin_gate("diag:1,2"), ParseError);
  CHECK_THROWS_AS(builtin_gate("nope"), ParseError);
  CHECK_THROWS_AS(builtin_gate("swap", SubsystemDims{2, 3}), ArgumentError);
  CHECK(is_builtin_gate_name("gn:3:1"));
  CHECK(is_builtin_gate_name("h_u8"));
  CHECK_FALSE(is_builtin_gate_name("gate.txt"));
}
