#pragma once

#include "epower/core.hpp"

#include <span>
#include <vector>

namespace epower {

/// Row-major flat index; party 0 is the most significant digit.
/// Throws std::out_of_range when a component exceeds its local dimension.
Index flatten_index(std::span<const int> multi_index, const SubsystemDims& dims);
std::vector<int> unflatten_index(Index flat, const SubsystemDims& dims);

/// Amplitudes rearranged into a (kept x traced) matrix A, so that the reduced
/// state on the kept parties is A A^dagger. Kept and traced parties each keep
/// their relative order.
Matrix bipartite_reshape(const Vector& amplitudes, const SubsystemDims& dims, PartyMask traced);

/// Reduced density operator on the parties not in `traced`. Tracing every
/// party yields the 1x1 matrix [1]; tracing none yields the full projector.
DensityOperator partial_trace(const PureState& state, PartyMask traced);

/// tr(rho^2) for a density operator.
double purity(const DensityOperator& rho);

/// Purity of the reduction of a pure state, computed on the smaller Gram
/// matrix without forming the reduced operator.
double reduced_purity(const Vector& amplitudes, const SubsystemDims& dims, PartyMask traced);
double reduced_purity(const PureState& state, PartyMask traced);

PureState apply_gate(const GateMatrix& gate, const PureState& state);

/// Kronecker product in party order (first factor is most significant).
Matrix kron_all(std::span<const Matrix> factors);
Vector kron_all(std::span<const Vector> factors);

}  // namespace epower
