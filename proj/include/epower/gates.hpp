#pragma once

#include "epower/core.hpp"
#include "epower/rational.hpp"

#include <array>
#include <variant>

namespace epower {

GateMatrix identity_gate(const SubsystemDims& dims);
/// Exchanges the two parties of [d, d].
GateMatrix swap_gate(int d);

/// Controlled SWAP on [2,2,2]; party 1 is the control.
GateMatrix fredkin();
/// Controlled-controlled NOT on [2,2,2]; parties 1 and 2 are the controls.
GateMatrix toffoli();
/// Controlled-controlled rotation with target block i cos(theta) 1 + sin(theta) X.
GateMatrix deutsch(double theta);

/// diag(1, ..., 1, e^{i alpha}) on n qubits.
GateMatrix g_n(int n, double alpha);
/// Prefactor c_n of eps_1(G_n(alpha)) = c_n (1 - cos alpha).
Rational gn_coefficient(int n);
double epower_gn_closed(int n, double alpha);

/// Eight phases phi_1..phi_8 in basis order |000>..|111> (stored 0-based).
using DiagonalPhases = std::array<double, 8>;

/// Seven-parameter form: phases depend on omega_1..omega_4 and delta_1..delta_3.
struct OmegaDelta {
  std::array<double, 4> omegas{};
  std::array<double, 3> deltas{};
};

using DiagonalParams = std::variant<DiagonalPhases, OmegaDelta>;

DiagonalPhases phases_from(const OmegaDelta& params);
GateMatrix diagonal_gate(const DiagonalParams& params);

/// Closed form of eps_1 for a diagonal three-qubit gate: 10/27 minus weighted
/// cosines c^{ij}_{kl} = cos(phi_i + phi_j - phi_k - phi_l), labels 1-based.
double epower_diagonal_closed(const DiagonalPhases& phis);
/// The same quantity in the delta variables; it does not depend on the omegas.
double epower_diagonal_deltas(const std::array<double, 3>& deltas);
std::array<double, 3> epower_diagonal_deltas_gradient(const std::array<double, 3>& deltas);

/// diag(1,1,1,-1,1,-1,-1,-1), a maximizer of eps_1 among diagonal gates.
GateMatrix h_d8();
/// Real symmetric +-1/sqrt(8) matrix whose Choi state is AME(6,2).
GateMatrix h_u8();

}  // namespace epower
