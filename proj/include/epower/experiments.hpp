#pragma once

#include "epower/core.hpp"
#include "epower/ensembles.hpp"
#include "epower/epower.hpp"
#include "epower/rational.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace epower {

// --- permutation census --------------------------------------------------

/// 162 eps_1 of a permutation gate failed to land on an integer.
class ClassificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kClassResidualTol = 1e-9;
inline constexpr int kClassScale = 162;

struct ClassRow {
  std::int64_t epsilon_times_162 = 0;
  std::uint64_t count = 0;
};

struct ClassTable {
  std::vector<ClassRow> rows;  // ascending key
  std::uint64_t total = 0;
  Rational mean;
  Rational max;
};

/// eps_1 of every permutation of the 2^qubits basis states, grouped by 162 eps_1.
/// Only qubits == 3 is supported.
ClassTable permutation_census(int qubits = 3);
std::string class_table_csv(const ClassTable& table);

// --- ensembles ---------------------------------------------------------

enum class Ensemble { Cue, Cre, Cpe, Perm };

Ensemble parse_ensemble(std::string_view name);
std::string_view ensemble_name(Ensemble e);

inline constexpr std::size_t kPermutationCount = 40320;
inline constexpr std::size_t kSampleChunk = 256;

/// eps_1 of n gates on [2,2,2] drawn from the ensemble. Chunk c of
/// kSampleChunk draws uses seed.substream(c). For Perm, n is capped at 8! and
/// n == 8! enumerates every permutation.
std::vector<double> sample_ensemble(Ensemble ensemble, std::size_t n, RngSeed seed);

struct Histogram {
  double lo = 0.0;
  double hi = 0.0;
  std::vector<double> probabilities;
  std::size_t samples = 0;
  double mean = 0.0;
  double std_error = 0.0;
  double min = 0.0;
  double max = 0.0;
};

/// Values outside [lo, hi] are clamped into the end bins.
Histogram make_histogram(std::span<const double> values, int bins, double lo, double hi);
std::string histogram_csv(const Histogram& h, Ensemble ensemble);

// --- scaling tables -------------------------------------------------------

struct QuditDRow {
  int d = 0;
  Rational mean_unitary;
  Rational upper_bound;
  Rational max_tau_one;
};

struct QuditNRow {
  int n = 0;
  int d = 0;
  Rational mean_over_bound;
  Rational orthogonal_over_unitary;
};

std::vector<QuditDRow> scaling_qudit_d(int n, int d_min, int d_max);
std::vector<QuditNRow> scaling_qudit_n(int n_min, int n_max, std::span<const int> ds);
std::string scaling_csv(std::span<const QuditDRow> rows);
std::string scaling_csv(std::span<const QuditNRow> rows);

// --- diagonal maximization --------------------------------------------------

inline constexpr double kDiagMaxTol = 1e-8;
inline constexpr double kDiagGradTol = 1e-10;

struct DiagMaxResult {
  std::array<double, 3> argmax{};
  double max_value = 0.0;
  double deviation = 0.0;  // |max - 16/27|
  double grid_best = 0.0;
  double gradient_norm = 0.0;
  int iterations = 0;
  bool converged = false;
  /// eps_1 of the diagonal gate rebuilt from argmax with random omegas,
  /// through the closed phase formula and through the general formula.
  double omega_closed = 0.0;
  double omega_general = 0.0;

  bool success() const { return converged && deviation <= kDiagMaxTol; }
};

/// Grid search over [0, 2 pi)^3 followed by BFGS from the best grid point
/// (jittered within its cell by `seed`).
DiagMaxResult maximize_diagonal(int grid, std::uint64_t seed);
std::string format_diag_max(const DiagMaxResult& r);

// --- means and single-gate reports --------------------------------------------

struct MeansReport {
  SubsystemDims dims;
  Rational mean_unitary;
  Rational mean_orthogonal;
  Rational upper_bound;
  std::optional<Rational> qudit_mean_unitary;
  std::optional<Rational> qudit_mean_orthogonal;
  std::optional<Rational> qudit_upper_bound;
  std::optional<McEstimate> mc_unitary;
  std::optional<McEstimate> mc_orthogonal;
};

/// Analytic Haar means and bound; with mc_samples > 0 also the sample means of
/// eps_1 over Haar-random U(D) and O(D) gates.
MeansReport compute_means(const SubsystemDims& dims, std::size_t mc_samples, RngSeed seed);
std::string format_means(const MeansReport& r);

/// Sample mean and standard error of eps_1 over n Haar-random gates.
McEstimate ensemble_mean(Group group, const SubsystemDims& dims, std::size_t n, RngSeed seed);

struct GateReport {
  EPowerReport epower;
  Rational upper_bound;
  std::optional<McEstimate> mc;
};

GateReport analyze_gate(const GateMatrix& gate, std::size_t mc_samples, RngSeed seed);
std::string format_gate_report(const GateReport& r);
std::string gate_report_json(const GateReport& r);

}  // namespace epower
