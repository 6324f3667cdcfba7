#pragma once

#include "epower/core.hpp"
#include "epower/entanglement.hpp"
#include "epower/rational.hpp"

#include <optional>
#include <vector>

namespace epower {

/// |U> on the doubled space dims ++ dims, amplitude U(j, j') / sqrt(D) at
/// flat index j * D + j'.
PureState choi_state(const GateMatrix& gate);

/// Entangling power of a gate with respect to one cut p|q of its parties:
///
///   2 [1 - prod_i d_i/(d_i+1) * sum_{x'} tr (tr_{p x'} |U><U|)^2]
///
/// where x' runs over all 2^n subsets of the primed (ancilla) parties,
/// trivial subsets included. Throws ArgumentError for a trivial split.
double epower_bipartition(const GateMatrix& gate, const Bipartition& split);

struct BipartitionValue {
  Bipartition split;
  double value = 0.0;
};

struct EPowerReport {
  SubsystemDims dims;
  /// One entry per canonical cut, ascending by mask.
  std::vector<BipartitionValue> per_bipartition;
  /// Arithmetic mean of the per-cut values.
  double total = 0.0;
};

EPowerReport epower_one_tangle(const GateMatrix& gate);

/// Basis-explicit contraction of U, U^dagger, U, U^dagger against the local
/// second-moment tensors. Tripartite gates with total dimension <= 16 only;
/// anything else throws UnsupportedError.
double epower_bipartition_indexform(const GateMatrix& gate, const Bipartition& split);
inline constexpr Index kIndexFormMaxDim = 16;

/// Per-cut upper bound from the maximal concurrence on every extended cut.
Rational upper_bound_bipartition(const SubsystemDims& dims, const Bipartition& split);
/// Mean of upper_bound_bipartition over all canonical cuts.
Rational upper_bound(const SubsystemDims& dims);
/// Closed binomial form of upper_bound for n qudits of dimension d.
Rational upper_bound_qudit(int n, int d);

/// Dimension constants of the Haar-mean formulas.
struct GroupMeanInputs {
  /// sum over all subsets of the product of member dims, i.e. prod (1 + d_i)
  Rational b;
  /// sum over canonical cuts of d_p + d_q
  Rational c;
  /// d_1 ... d_n
  Rational d;
  /// 3 - sum d_i - sum_{i<j} d_i d_j + 3 d_1 d_2 d_3, tripartite only
  std::optional<Rational> a;

  static GroupMeanInputs from(const SubsystemDims& dims);
};

/// Haar mean of eps_1 over U(D).
Rational mean_unitary(const SubsystemDims& dims);
/// Haar mean of eps_1 over O(D). Requires D >= 2.
Rational mean_orthogonal(const SubsystemDims& dims);
/// Tripartite forms written with the constant A; n must be 3.
Rational mean_unitary_tripartite(const SubsystemDims& dims);
Rational mean_orthogonal_tripartite(const SubsystemDims& dims);

Rational mean_qudit_unitary(int n, int d);
Rational mean_qudit_orthogonal(int n, int d);

/// 2 (d - 1) / d, the largest generalized concurrence across a d x d cut.
Rational max_tau_one(int d);
/// Mean over canonical cuts of the largest concurrence each cut admits.
Rational one_tangle_ceiling(const SubsystemDims& dims);

}  // namespace epower
