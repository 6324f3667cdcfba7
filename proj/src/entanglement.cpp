#include "epower/entanglement.hpp"

#include "epower/tensor.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace epower {

namespace {

void check_split(const SubsystemDims& dims, const Bipartition& split) {
  if (split.n_parties != dims.parties()) {
    throw ArgumentError("bipartition over " + std::to_string(split.n_parties) +
                        " parties used with dims " + dims.str());
  }
  if ((split.left & ~full_mask(split.n_parties)) != 0) {
    throw ArgumentError("bipartition selects parties out of range");
  }
}

}  // namespace

bool Bipartition::is_canonical() const {
  return (left & 1U) != 0 && left != full_mask(n_parties) &&
         (left & ~full_mask(n_parties)) == 0;
}

std::string Bipartition::label() const {
  std::string out;
  for (int p : parties_of(left)) out += std::to_string(p + 1);
  out += '|';
  for (int p : parties_of(right())) out += std::to_string(p + 1);
  return out;
}

std::vector<PartyMask> enumerate_bipartitions(int n, BipartitionMode mode) {
  if (n < 1 || n > 2 * kMaxParties) throw ArgumentError("party count out of range");
  std::vector<PartyMask> out;
  const PartyMask full = full_mask(n);
  if (mode == BipartitionMode::OrderedWithTrivial) {
    out.reserve(std::size_t{1} << n);
    for (PartyMask m = 0;; ++m) {
      out.push_back(m);
      if (m == full) break;
    }
    return out;
  }
  for (PartyMask m = 1; m < full; m += 2) out.push_back(m);
  return out;
}

std::vector<Bipartition> canonical_bipartitions(int n) {
  std::vector<Bipartition> out;
  for (PartyMask m : enumerate_bipartitions(n, BipartitionMode::UnorderedNontrivial)) {
    out.push_back({m, n});
  }
  return out;
}

double generalized_concurrence(const PureState& state, const Bipartition& split) {
  check_split(state.dims(), split);
  return 2.0 * (1.0 - reduced_purity(state, split.right()));
}

double one_tangle(const PureState& state) {
  const int n = state.dims().parties();
  if (n < 2) throw ArgumentError("one-tangle needs at least two parties");
  const auto splits = canonical_bipartitions(n);
  double sum = 0.0;
  for (const auto& s : splits) sum += generalized_concurrence(state, s);
  return sum / static_cast<double>(splits.size());
}

double concurrence_upper_bound(const SubsystemDims& dims, const Bipartition& split) {
  check_split(dims, split);
  const auto m = static_cast<double>(std::min(dims.product(split.left), dims.product(split.right())));
  return 2.0 * (m - 1.0) / m;
}

AmeReport is_ame(const PureState& state, double tol) {
  const SubsystemDims& dims = state.dims();
  if (!dims.is_uniform()) {
    throw ArgumentError("AME states need equal local dimensions, got " + dims.str());
  }
  const int n = dims.parties();
  const double d = dims[0];
  const PartyMask full = full_mask(n);
  AmeReport report;
  for (PartyMask left = 1; left < full; ++left) {
    const int k = std::popcount(left);
    if (2 * k > n) continue;
    const double target = std::pow(d, -k);
    const double p = reduced_purity(state, full & ~left);
    report.worst_deviation = std::max(report.worst_deviation, std::abs(p - target));
  }
  report.is_ame = report.worst_deviation <= tol;
  return report;
}

}  // namespace epower
