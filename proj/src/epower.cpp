#include "epower/epower.hpp"

#include "epower/tensor.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace epower {

namespace {

void check_nontrivial(const SubsystemDims& dims, const Bipartition& split) {
  if (split.n_parties != dims.parties()) {
    throw ArgumentError("bipartition over " + std::to_string(split.n_parties) +
                        " parties used with dims " + dims.str());
  }
  const PartyMask full = full_mask(dims.parties());
  if ((split.left & ~full) != 0 || split.left == 0 || split.left == full) {
    throw ArgumentError("entangling power needs a nontrivial cut, got " + split.label());
  }
}

double local_prefactor(const SubsystemDims& dims) {
  double pref = 1.0;
  for (int d : dims.values()) pref *= static_cast<double>(d) / (d + 1.0);
  return pref;
}

Vector choi_amplitudes(const Matrix& u) {
  const Index dim = u.rows();
  const double scale = 1.0 / std::sqrt(static_cast<double>(dim));
  Vector amps(dim * dim);
  for (Index i = 0; i < dim; ++i) {
    for (Index j = 0; j < dim; ++j) amps(i * dim + j) = u(i, j) * scale;
  }
  return amps;
}

// Sum is taken in ascending x' order so repeated evaluations are bitwise identical.
double epower_from_choi(const Vector& choi, const SubsystemDims& dims, PartyMask left) {
  const int n = dims.parties();
  const SubsystemDims doubled = dims.doubled();
  double sum = 0.0;
  for (PartyMask primed = 0; primed <= full_mask(n); ++primed) {
    sum += reduced_purity(choi, doubled, left | (primed << n));
  }
  return 2.0 * (1.0 - local_prefactor(dims) * sum);
}

Rational int_rational(Index v) { return Rational(BigInt(v)); }

void check_qudit(int n, int d) {
  if (n < 2) throw ArgumentError("need n >= 2 parties");
  if (d < 2) throw ArgumentError("need local dimension d >= 2");
  if (n > kMaxParties) throw ArgumentError("too many parties");
}

BigInt big_pow(long base, unsigned exp) {
  BigInt out = 1;
  for (unsigned i = 0; i < exp; ++i) out *= base;
  return out;
}

BigInt binomial(int n, int k) {
  BigInt out = 1;
  for (int i = 1; i <= k; ++i) {
    out *= (n - k + i);
    out /= i;
  }
  return out;
}

}  // namespace

PureState choi_state(const GateMatrix& gate) {
  return PureState(choi_amplitudes(gate.matrix()), gate.dims().doubled());
}

double epower_bipartition(const GateMatrix& gate, const Bipartition& split) {
  check_nontrivial(gate.dims(), split);
  return epower_from_choi(choi_amplitudes(gate.matrix()), gate.dims(), split.left);
}

EPowerReport epower_one_tangle(const GateMatrix& gate) {
  const SubsystemDims& dims = gate.dims();
  if (dims.parties() < 2) throw ArgumentError("entangling power needs at least two parties");
  const Vector choi = choi_amplitudes(gate.matrix());
  EPowerReport report{dims, {}, 0.0};
  double sum = 0.0;
  for (const Bipartition& split : canonical_bipartitions(dims.parties())) {
    const double value = epower_from_choi(choi, dims, split.left);
    report.per_bipartition.push_back({split, value});
    sum += value;
  }
  report.total = sum / static_cast<double>(report.per_bipartition.size());
  return report;
}

double epower_bipartition_indexform(const GateMatrix& gate, const Bipartition& split) {
  const SubsystemDims& dims = gate.dims();
  if (dims.parties() != 3) throw UnsupportedError("index form is implemented for three parties only");
  if (dims.total() > kIndexFormMaxDim) {
    throw UnsupportedError("index form limited to total dimension " +
                           std::to_string(kIndexFormMaxDim));
  }
  check_nontrivial(dims, split);

  const Matrix& u = gate.matrix();
  const std::array<int, 3> d{dims[0], dims[1], dims[2]};
  std::array<bool, 3> in_left{};
  for (int p = 0; p < 3; ++p) in_left[static_cast<std::size_t>(p)] = (split.left >> p) & 1U;

  auto flat = [&](int a, int b, int c) { return (static_cast<Index>(a) * d[1] + b) * d[2] + c; };
  // u_v = delta(v1,v2) delta(v3,v4) + delta(v1,v4) delta(v3,v2)
  auto weight = [](const std::array<int, 4>& v) {
    return int(v[0] == v[1] && v[2] == v[3]) + int(v[0] == v[3] && v[2] == v[1]);
  };

  // f^{ab|c}_{r,s,t}: the six deltas pin l and j to i and k, leaving i and k free.
  auto f_tensor = [&](Index c1, Index c2, Index c3, Index c4) {
    Complex acc = 0.0;
    std::array<int, 3> i{};
    std::array<int, 3> k{};
    for (i[0] = 0; i[0] < d[0]; ++i[0])
      for (i[1] = 0; i[1] < d[1]; ++i[1])
        for (i[2] = 0; i[2] < d[2]; ++i[2])
          for (k[0] = 0; k[0] < d[0]; ++k[0])
            for (k[1] = 0; k[1] < d[1]; ++k[1])
              for (k[2] = 0; k[2] < d[2]; ++k[2]) {
                std::array<int, 3> j{};
                std::array<int, 3> l{};
                for (std::size_t p = 0; p < 3; ++p) {
                  j[p] = in_left[p] ? k[p] : i[p];
                  l[p] = in_left[p] ? i[p] : k[p];
                }
                const Index fi = flat(i[0], i[1], i[2]);
                const Index fj = flat(j[0], j[1], j[2]);
                const Index fk = flat(k[0], k[1], k[2]);
                const Index fl = flat(l[0], l[1], l[2]);
                acc += u(fi, c1) * std::conj(u(fj, c2)) * u(fk, c3) * std::conj(u(fl, c4));
              }
    return acc;
  };

  auto tuples = [](int dim) {
    std::vector<std::array<int, 4>> out;
    for (int a = 0; a < dim; ++a)
      for (int b = 0; b < dim; ++b)
        for (int c = 0; c < dim; ++c)
          for (int e = 0; e < dim; ++e) out.push_back({a, b, c, e});
    return out;
  };
  const auto rs = tuples(d[0]);
  const auto ss = tuples(d[1]);
  const auto ts = tuples(d[2]);

  Complex contraction = 0.0;
  for (const auto& r : rs) {
    const int wr = weight(r);
    if (wr == 0) continue;
    for (const auto& s : ss) {
      const int ws = weight(s);
      if (ws == 0) continue;
      for (const auto& t : ts) {
        const int wt = weight(t);
        if (wt == 0) continue;
        contraction += static_cast<double>(wr * ws * wt) *
                       f_tensor(flat(r[0], s[0], t[0]), flat(r[1], s[1], t[1]),
                                flat(r[2], s[2], t[2]), flat(r[3], s[3], t[3]));
      }
    }
  }

  double pref = 1.0;
  for (int di : d) pref /= static_cast<double>(di) * (di + 1.0);
  return 2.0 * (1.0 - pref * contraction.real());
}

Rational upper_bound_bipartition(const SubsystemDims& dims, const Bipartition& split) {
  check_nontrivial(dims, split);
  const int n = dims.parties();
  const PartyMask full = full_mask(n);
  Rational pref = 1;
  for (int d : dims.values()) pref *= Rational(d, d + 1);

  Rational sum = 0;
  for (PartyMask primed = 0; primed <= full; ++primed) {
    const Index side_p = dims.product(split.left) * dims.product(primed);
    const Index side_q = dims.product(split.right()) * dims.product(full & ~primed);
    const Index m = std::min(side_p, side_q);
    sum += Rational(int_rational(m - 1)) / int_rational(m);
  }
  const Rational ordered_count = int_rational(Index{1} << n);
  return 2 - 2 * pref * (ordered_count - sum);
}

Rational upper_bound(const SubsystemDims& dims) {
  if (dims.parties() < 2) throw ArgumentError("upper bound needs at least two parties");
  Rational sum = 0;
  const auto splits = canonical_bipartitions(dims.parties());
  for (const auto& s : splits) sum += upper_bound_bipartition(dims, s);
  return sum / static_cast<long>(splits.size());
}

Rational upper_bound_qudit(int n, int d) {
  check_qudit(n, d);
  // Cuts with |p| = l, extended by |x'| = j; min side dimension d^(n - |l - j|)
  // after folding j -> n - j. Cuts with l = n/2 are counted twice by C(n, l).
  Rational inner = 0;
  for (int j = 0; j <= n; ++j) {
    for (int l = 1; l <= n / 2; ++l) {
      const BigInt m = big_pow(d, static_cast<unsigned>(n - std::abs(l - j)));
      const int halving = (2 * l == n) ? 2 : 1;
      inner += Rational(binomial(n, j) * binomial(n, l) * (m - 1), m * halving);
    }
  }
  const BigInt cuts = (BigInt(1) << (n - 1)) - 1;
  const Rational ratio(big_pow(d, static_cast<unsigned>(n)), big_pow(d + 1, static_cast<unsigned>(n)));
  return 2 - 2 * ratio * (Rational(BigInt(1) << n) - inner / Rational(cuts));
}

GroupMeanInputs GroupMeanInputs::from(const SubsystemDims& dims) {
  const int n = dims.parties();
  GroupMeanInputs in;
  in.b = 1;
  in.d = 1;
  for (int di : dims.values()) {
    in.b *= (1 + di);
    in.d *= di;
  }
  in.c = 0;
  for (const auto& s : canonical_bipartitions(n)) {
    in.c += int_rational(dims.product(s.left)) + int_rational(dims.product(s.right()));
  }
  if (n == 3) {
    const long d1 = dims[0];
    const long d2 = dims[1];
    const long d3 = dims[2];
    in.a = Rational(3 - d1 - d2 - d3 - d1 * d2 - d1 * d3 - d2 * d3 + 3 * d1 * d2 * d3);
  }
  return in;
}

Rational mean_unitary(const SubsystemDims& dims) {
  const int n = dims.parties();
  if (n < 2) throw ArgumentError("mean entangling power needs at least two parties");
  const GroupMeanInputs in = GroupMeanInputs::from(dims);
  Rational inv_local = 1;
  for (int d : dims.values()) inv_local /= (d + 1);
  const Rational cuts = Rational((BigInt(1) << (n - 1)) - 1);
  return 2 * (1 - inv_local * in.b * in.c / (cuts * (in.d + 1)));
}

Rational mean_orthogonal(const SubsystemDims& dims) {
  const int n = dims.parties();
  if (n < 2) throw ArgumentError("mean entangling power needs at least two parties");
  if (dims.total() < 2) throw ArgumentError("orthogonal mean needs total dimension >= 2");
  const GroupMeanInputs in = GroupMeanInputs::from(dims);
  Rational inv_local = 1;
  for (int d : dims.values()) inv_local /= (d + 1);
  const Rational two_n = Rational(BigInt(1) << n);
  const Rational cuts = Rational((BigInt(1) << (n - 1)) - 1);
  const Rational numer = two_n * (in.d + 1) - 2 * in.b + (in.b * in.d - two_n) / cuts * in.c;
  return 2 * (1 - inv_local * numer / ((in.d - 1) * (in.d + 2)));
}

Rational mean_unitary_tripartite(const SubsystemDims& dims) {
  if (dims.parties() != 3) throw ArgumentError("tripartite formula needs three parties");
  const GroupMeanInputs in = GroupMeanInputs::from(dims);
  return 2 * *in.a / (3 * (in.d + 1));
}

Rational mean_orthogonal_tripartite(const SubsystemDims& dims) {
  if (dims.parties() != 3) throw ArgumentError("tripartite formula needs three parties");
  if (dims.total() < 2) throw ArgumentError("orthogonal mean needs total dimension >= 2");
  const GroupMeanInputs in = GroupMeanInputs::from(dims);
  Rational local = 1;
  Rational plus_one = 1;
  for (int d : dims.values()) {
    local *= Rational(d) * (d + 1);
    plus_one *= (d + 1);
  }
  return 2 * *in.a * (local - 8) / (3 * (in.d - 1) * (in.d + 2) * plus_one);
}

Rational mean_qudit_unitary(int n, int d) {
  check_qudit(n, d);
  const auto un = static_cast<unsigned>(n);
  const BigInt dn = big_pow(d, un);
  const BigInt two_n = BigInt(1) << n;
  const BigInt cuts = (BigInt(1) << (n - 1)) - 1;
  return Rational(two_n * (dn + 1) - 2 * big_pow(d + 1, un), cuts * (dn + 1));
}

Rational mean_qudit_orthogonal(int n, int d) {
  check_qudit(n, d);
  const auto un = static_cast<unsigned>(n);
  const BigInt dn = big_pow(d, un);
  const BigInt dp1n = big_pow(d + 1, un);
  const BigInt two_n = BigInt(1) << n;
  const BigInt cuts = (BigInt(1) << (n - 1)) - 1;
  return Rational((two_n * (dn + 1) - 2 * dp1n) * (dn * dp1n - two_n),
                  cuts * (dn * dn + dn - 2) * dp1n);
}

Rational max_tau_one(int d) {
  if (d < 1) throw ArgumentError("local dimension must be >= 1");
  return Rational(2 * (d - 1), d);
}

Rational one_tangle_ceiling(const SubsystemDims& dims) {
  if (dims.parties() < 2) throw ArgumentError("one-tangle needs at least two parties");
  Rational sum = 0;
  const auto splits = canonical_bipartitions(dims.parties());
  for (const auto& s : splits) {
    const Index m = std::min(dims.product(s.left), dims.product(s.right()));
    sum += 2 * Rational(int_rational(m - 1)) / int_rational(m);
  }
  return sum / static_cast<long>(splits.size());
}

}  // namespace epower
