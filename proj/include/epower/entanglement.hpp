#pragma once

#include "epower/core.hpp"

#include <string>
#include <vector>

namespace epower {

/// A cut of n parties into `left` and its complement.
struct Bipartition {
  PartyMask left = 0;
  int n_parties = 0;

  PartyMask right() const { return ~left & full_mask(n_parties); }
  /// Nonempty, proper, and containing party 0.
  bool is_canonical() const;
  /// 1-based label such as "1|23" or "13|2".
  std::string label() const;

  friend bool operator==(const Bipartition&, const Bipartition&) = default;
};

enum class BipartitionMode {
  /// 2^(n-1)-1 cuts, each represented by the side that contains party 0.
  UnorderedNontrivial,
  /// All 2^n subsets, trivial ones included.
  OrderedWithTrivial,
};

/// Masks in ascending order (party 0 is bit 0).
std::vector<PartyMask> enumerate_bipartitions(int n, BipartitionMode mode);
std::vector<Bipartition> canonical_bipartitions(int n);

/// tau_{g|g'} = 2 (1 - tr rho_g^2).
double generalized_concurrence(const PureState& state, const Bipartition& split);

/// Mean of the generalized concurrences over all unordered nontrivial cuts.
double one_tangle(const PureState& state);

/// 2 (m - 1) / m with m the smaller side dimension.
double concurrence_upper_bound(const SubsystemDims& dims, const Bipartition& split);

struct AmeReport {
  bool is_ame = false;
  /// max |purity - d^-k| over all reductions to k <= n/2 parties
  double worst_deviation = 0.0;
};

inline constexpr double kAmeTol = 1e-8;

/// Throws ArgumentError when local dimensions differ.
AmeReport is_ame(const PureState& state, double tol = kAmeTol);

}  // namespace epower
