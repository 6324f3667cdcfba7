#include "epower/gates.hpp"

#include "epower/entanglement.hpp"

#include <bit>
#include <cmath>

namespace epower {

namespace {

const SubsystemDims& three_qubits() {
  static const SubsystemDims dims{2, 2, 2};
  return dims;
}

Matrix diag_of(const Vector& v) { return v.asDiagonal().toDenseMatrix(); }

}  // namespace

GateMatrix identity_gate(const SubsystemDims& dims) {
  return GateMatrix(Matrix::Identity(dims.total(), dims.total()), dims);
}

GateMatrix swap_gate(int d) {
  if (d < 1) throw ArgumentError("local dimension must be >= 1");
  const Index dim = static_cast<Index>(d) * d;
  Matrix m = Matrix::Zero(dim, dim);
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) m(static_cast<Index>(b) * d + a, static_cast<Index>(a) * d + b) = 1.0;
  }
  return GateMatrix(std::move(m), SubsystemDims{d, d});
}

GateMatrix fredkin() {
  Matrix m = Matrix::Identity(8, 8);
  m.row(5).swap(m.row(6));  // |101> <-> |110>
  return GateMatrix(std::move(m), three_qubits());
}

GateMatrix toffoli() {
  Matrix m = Matrix::Identity(8, 8);
  m.row(6).swap(m.row(7));  // |110> <-> |111>
  return GateMatrix(std::move(m), three_qubits());
}

GateMatrix deutsch(double theta) {
  Matrix m = Matrix::Identity(8, 8);
  const Complex i_cos(0.0, std::cos(theta));
  const double s = std::sin(theta);
  m(6, 6) = i_cos;
  m(6, 7) = s;
  m(7, 6) = s;
  m(7, 7) = i_cos;
  return GateMatrix(std::move(m), three_qubits());
}

GateMatrix g_n(int n, double alpha) {
  if (n < 2 || n > kMaxParties) throw ArgumentError("G_n needs 2 <= n <= " + std::to_string(kMaxParties));
  const Index dim = Index{1} << n;
  Vector diag = Vector::Ones(dim);
  diag(dim - 1) = std::polar(1.0, alpha);
  return GateMatrix(diag_of(diag), SubsystemDims::uniform(n, 2));
}

Rational gn_coefficient(int n) {
  if (n < 2 || n > kMaxParties) throw ArgumentError("G_n needs 2 <= n <= " + std::to_string(kMaxParties));
  auto ipow = [](long base, int exp) {
    BigInt out = 1;
    for (int k = 0; k < exp; ++k) out *= base;
    return out;
  };
  BigInt sum = 0;
  for (const auto& split : canonical_bipartitions(n)) {
    const int np = std::popcount(split.left);
    const int nq = n - np;
    sum += (ipow(3, np) - ipow(2, np)) * (ipow(3, nq) - ipow(2, nq));
  }
  // Normalized by the number of canonical cuts, 2^(n-1) - 1.
  return Rational(8 * sum, ipow(6, n) * ((BigInt(1) << (n - 1)) - 1));
}

double epower_gn_closed(int n, double alpha) {
  return to_double(gn_coefficient(n)) * (1.0 - std::cos(alpha));
}

DiagonalPhases phases_from(const OmegaDelta& p) {
  const auto& [w1, w2, w3, w4] = p.omegas;
  const auto& [d1, d2, d3] = p.deltas;
  return {w1,
          w1 + w2 + d1,
          w3,
          w2 + w3,
          -w2 - w3 + w4 + d2,
          -w3 + w4 - d3,
          -w1 - w2 + w4 - d1,
          -w1 + w4};
}

GateMatrix diagonal_gate(const DiagonalParams& params) {
  const DiagonalPhases phis = std::holds_alternative<DiagonalPhases>(params)
                                  ? std::get<DiagonalPhases>(params)
                                  : phases_from(std::get<OmegaDelta>(params));
  Vector diag(8);
  for (Index k = 0; k < 8; ++k) diag(k) = std::polar(1.0, phis[static_cast<std::size_t>(k)]);
  return GateMatrix(diag_of(diag), three_qubits());
}

double epower_diagonal_closed(const DiagonalPhases& phi) {
  auto c = [&](int i, int j, int k, int l) {
    auto at = [&](int label) { return phi[static_cast<std::size_t>(label - 1)]; };
    return std::cos(at(i) + at(j) - at(k) - at(l));
  };
  const double strong = c(1, 4, 2, 3) + c(1, 6, 2, 5) + c(1, 7, 3, 5) + c(2, 8, 4, 6) +
                        c(3, 8, 4, 7) + c(5, 8, 6, 7);
  const double weak = c(3, 6, 4, 5) + c(2, 7, 4, 5) + c(2, 7, 3, 6) + c(1, 8, 4, 5) +
                      c(1, 8, 3, 6) + c(1, 8, 2, 7);
  return 10.0 / 27.0 - 4.0 / 81.0 * strong - 1.0 / 81.0 * weak;
}

double epower_diagonal_deltas(const std::array<double, 3>& d) {
  return (29.0 - 8.0 * std::cos(d[0]) - 2.0 * std::cos(d[1]) - 2.0 * std::cos(d[2]) -
          8.0 * std::cos(d[0] + d[1] + d[2]) - 4.0 * std::cos(d[0] + d[1]) -
          4.0 * std::cos(d[0] + d[2]) - std::cos(d[1] + d[2])) /
         81.0;
}

std::array<double, 3> epower_diagonal_deltas_gradient(const std::array<double, 3>& d) {
  const double s123 = 8.0 * std::sin(d[0] + d[1] + d[2]);
  const double s12 = 4.0 * std::sin(d[0] + d[1]);
  const double s13 = 4.0 * std::sin(d[0] + d[2]);
  const double s23 = std::sin(d[1] + d[2]);
  return {(8.0 * std::sin(d[0]) + s123 + s12 + s13) / 81.0,
          (2.0 * std::sin(d[1]) + s123 + s12 + s23) / 81.0,
          (2.0 * std::sin(d[2]) + s123 + s13 + s23) / 81.0};
}

GateMatrix h_d8() {
  Vector diag(8);
  diag << 1, 1, 1, -1, 1, -1, -1, -1;
  return GateMatrix(diag_of(diag), three_qubits());
}

GateMatrix h_u8() {
  static constexpr int kSigns[8][8] = {
      {-1, -1, -1, 1, -1, 1, 1, 1},    {-1, -1, -1, 1, 1, -1, -1, -1},
      {-1, -1, 1, -1, -1, 1, -1, -1},  {1, 1, -1, 1, -1, 1, -1, -1},
      {-1, 1, -1, -1, -1, -1, 1, -1},  {1, -1, 1, 1, -1, -1, 1, -1},
      {1, -1, -1, -1, 1, 1, 1, -1},    {1, -1, -1, -1, -1, -1, -1, 1},
  };
  const double scale = 1.0 / std::sqrt(8.0);
  Matrix m(8, 8);
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) m(i, j) = kSigns[i][j] * scale;
  }
  return GateMatrix(std::move(m), three_qubits());
}

}  // namespace epower
