#include "epower/entanglement.hpp"
#include "epower/epower.hpp"
#include "epower/experiments.hpp"
#include "epower/gates.hpp"
#include "epower/io.hpp"
#include "epower/tensor.hpp"

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

namespace py = pybind11;
using namespace epower;

namespace {

py::object fraction(const Rational& r) {
  static py::object cls = py::module_::import("fractions").attr("Fraction");
  return cls(to_string(r));
}

GateMatrix make_gate(const Matrix& m, const std::vector<int>& dims) { return GateMatrix(m, SubsystemDims(dims)); }

PureState make_state(const Vector& v, const std::vector<int>& dims) { return PureState(v, SubsystemDims(dims)); }

py::tuple gate_tuple(const GateMatrix& g) { return py::make_tuple(g.matrix(), std::vector<int>(g.dims().values().begin(), g.dims().values().end()));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Entangling power of multipartite unitary gates";

  static py::exception<ValidationError> validation_error(m, "ValidationError", PyExc_ValueError);
  static py::exception<ParseError> parse_error(m, "ParseError", PyExc_ValueError);
  static py::exception<UnsupportedError> unsupported_error(m, "UnsupportedError", PyExc_NotImplementedError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ValidationError& e) {
      py::set_error(validation_error, e.what());
    } catch (const ParseError& e) {
      py::set_error(parse_error, e.what());
    } catch (const UnsupportedError& e) {
      py::set_error(unsupported_error, e.what());
    }
  });

  // states and gates
  m.def("builtin_gate",
        [](const std::string& name, std::optional<std::vector<int>> dims) {
          std::optional<SubsystemDims> d;
          if (dims) d = SubsystemDims(*dims);
          return gate_tuple(builtin_gate(name, d));
        },
        py::arg("name"), py::arg("dims") = py::none(), "Returns (matrix, dims) of a builtin gate.");
  m.def("parse_gate_text", [](const std::string& text) { return gate_tuple(parse_gate_text(text)); });
  m.def("format_gate_text",
        [](const Matrix& u, const std::vector<int>& dims) { return format_gate_text(make_gate(u, dims)); },
        py::arg("matrix"), py::arg("dims"));
  m.def("haar_unitary",
        [](int d, std::uint64_t seed, std::uint64_t stream) {
          Rng rng(RngSeed{seed, stream});
          return haar_unitary(d, rng).matrix();
        },
        py::arg("d"), py::arg("seed") = 0, py::arg("stream") = 0);
  m.def("haar_orthogonal",
        [](int d, std::uint64_t seed, std::uint64_t stream) {
          Rng rng(RngSeed{seed, stream});
          return haar_orthogonal(d, rng).matrix();
        },
        py::arg("d"), py::arg("seed") = 0, py::arg("stream") = 0);

  // entanglement
  m.def("one_tangle", [](const Vector& psi, const std::vector<int>& dims) { return one_tangle(make_state(psi, dims)); },
        py::arg("state"), py::arg("dims"));
  m.def("reduced_purity",
        [](const Vector& psi, const std::vector<int>& dims, const std::vector<int>& traced) {
          return reduced_purity(make_state(psi, dims), mask_of(traced));
        },
        py::arg("state"), py::arg("dims"), py::arg("traced"));
  m.def("is_ame",
        [](const Vector& psi, const std::vector<int>& dims, double tol) {
          const AmeReport r = is_ame(make_state(psi, dims), tol);
          return py::make_tuple(r.is_ame, r.worst_deviation);
        },
        py::arg("state"), py::arg("dims"), py::arg("tol") = kAmeTol, "Returns (is_ame, worst_deviation).");

  // entangling power
  m.def("choi_state",
        [](const Matrix& u, const std::vector<int>& dims) { return choi_state(make_gate(u, dims)).amplitudes(); },
        py::arg("matrix"), py::arg("dims"));
  m.def("epower_one_tangle",
        [](const Matrix& u, const std::vector<int>& dims) {
          const EPowerReport r = epower_one_tangle(make_gate(u, dims));
          py::dict per;
          for (const auto& entry : r.per_bipartition) per[py::str(entry.split.label())] = entry.value;
          py::dict out;
          out["per_bipartition"] = per;
          out["total"] = r.total;
          return out;
        },
        py::arg("matrix"), py::arg("dims"));
  m.def("epower_bipartition",
        [](const Matrix& u, const std::vector<int>& dims, const std::vector<int>& left) {
          return epower_bipartition(make_gate(u, dims), Bipartition{mask_of(left), static_cast<int>(dims.size())});
        },
        py::arg("matrix"), py::arg("dims"), py::arg("left"), "left lists 0-based parties on one side of the cut.");
  m.def("mc_entangling_power",
        [](const Matrix& u, const std::vector<int>& dims, std::size_t samples, std::uint64_t seed) {
          McEstimate e;
          {
            py::gil_scoped_release release;
            e = mc_entangling_power(make_gate(u, dims), samples, RngSeed{seed, 0});
          }
          return py::make_tuple(e.estimate, e.std_error);
        },
        py::arg("matrix"), py::arg("dims"), py::arg("samples") = 20000, py::arg("seed") = 0,
        "Returns (estimate, std_error).");

  // exact means and bounds (fractions.Fraction)
  m.def("upper_bound", [](const std::vector<int>& dims) { return fraction(upper_bound(SubsystemDims(dims))); });
  m.def("mean_unitary", [](const std::vector<int>& dims) { return fraction(mean_unitary(SubsystemDims(dims))); });
  m.def("mean_orthogonal",
        [](const std::vector<int>& dims) { return fraction(mean_orthogonal(SubsystemDims(dims))); });
  m.def("upper_bound_qudit", [](int n, int d) { return fraction(upper_bound_qudit(n, d)); });
  m.def("mean_qudit_unitary", [](int n, int d) { return fraction(mean_qudit_unitary(n, d)); });
  m.def("mean_qudit_orthogonal", [](int n, int d) { return fraction(mean_qudit_orthogonal(n, d)); });

  // experiments
  m.def("permutation_census", [] {
    ClassTable t;
    {
      py::gil_scoped_release release;
      t = permutation_census(3);
    }
    py::list rows;
    for (const auto& r : t.rows) rows.append(py::make_tuple(r.epsilon_times_162, r.count));
    return rows;
  }, "List of (162*eps_1, count) over all three-qubit permutation gates.");
  m.def("maximize_diagonal",
        [](int grid, std::uint64_t seed) {
          const DiagMaxResult r = maximize_diagonal(grid, seed);
          py::dict out;
          out["argmax"] = r.argmax;
          out["max"] = r.max_value;
          out["deviation"] = r.deviation;
          out["converged"] = r.converged;
          out["success"] = r.success();
          return out;
        },
        py::arg("grid") = 64, py::arg("seed") = 0);
}
