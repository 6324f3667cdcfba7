#include "epower/experiments.hpp"

#include "epower/gates.hpp"
#include "epower/io.hpp"
#include "epower/parallel.hpp"

#include <json.hpp>

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

namespace epower {

namespace {

const SubsystemDims& three_qubits() {
  static const SubsystemDims dims{2, 2, 2};
  return dims;
}

std::size_t chunk_count(std::size_t n) { return (n + kSampleChunk - 1) / kSampleChunk; }

std::string exact_and_value(const Rational& r) {
  return to_string(r) + " (" + format_double(to_double(r)) + ")";
}

}  // namespace

// --- permutation census --------------------------------------------------

ClassTable permutation_census(int qubits) {
  if (qubits != 3) throw UnsupportedError("permutation census is implemented for 3 qubits only");
  const SubsystemDims& dims = three_qubits();
  const int dim = static_cast<int>(dims.total());
  const std::uint64_t total = factorial(dim);
  constexpr std::uint64_t kChunk = 1024;
  const std::size_t chunks = static_cast<std::size_t>((total + kChunk - 1) / kChunk);

  std::vector<std::map<std::int64_t, std::uint64_t>> partial(chunks);
  parallel_for(chunks, [&](std::size_t c) {
    const std::uint64_t begin = c * kChunk;
    const std::uint64_t end = std::min(total, begin + kChunk);
    for (std::uint64_t rank = begin; rank < end; ++rank) {
      const auto perm = nth_permutation(dim, rank);
      const double eps = epower_one_tangle(permutation_matrix(perm, dims)).total;
      const double scaled = kClassScale * eps;
      const double rounded = std::round(scaled);
      if (std::abs(scaled - rounded) >= kClassResidualTol) {
        throw ClassificationError("162*eps1 = " + format_double(scaled) +
                                  " is not an integer for permutation rank " + std::to_string(rank));
      }
      ++partial[c][static_cast<std::int64_t>(rounded)];
    }
  });

  std::map<std::int64_t, std::uint64_t> merged;
  for (const auto& m : partial) {
    for (const auto& [key, count] : m) merged[key] += count;
  }
  ClassTable table;
  BigInt weighted = 0;
  for (const auto& [key, count] : merged) {
    table.rows.push_back({key, count});
    table.total += count;
    weighted += BigInt(key) * BigInt(count);
  }
  table.mean = Rational(weighted, BigInt(kClassScale) * BigInt(table.total));
  table.max = Rational(table.rows.back().epsilon_times_162, kClassScale);
  return table;
}

std::string class_table_csv(const ClassTable& table) {
  std::string out = "epsilon_times_162,count\n";
  for (const auto& row : table.rows) {
    out += std::to_string(row.epsilon_times_162) + "," + std::to_string(row.count) + "\n";
  }
  out += "# classes=" + std::to_string(table.rows.size()) + " total=" + std::to_string(table.total) +
         " mean=" + to_string(table.mean) + " max=" + to_string(table.max) + "\n";
  return out;
}

// --- ensembles ---------------------------------------------------------

Ensemble parse_ensemble(std::string_view name) {
  if (name == "cue") return Ensemble::Cue;
  if (name == "cre") return Ensemble::Cre;
  if (name == "cpe") return Ensemble::Cpe;
  if (name == "perm") return Ensemble::Perm;
  throw ArgumentError("unknown ensemble '" + std::string(name) + "' (cue, cre, cpe, perm)");
}

std::string_view ensemble_name(Ensemble e) {
  switch (e) {
    case Ensemble::Cue: return "cue";
    case Ensemble::Cre: return "cre";
    case Ensemble::Cpe: return "cpe";
    case Ensemble::Perm: return "perm";
  }
  return "?";
}

std::vector<double> sample_ensemble(Ensemble ensemble, std::size_t n, RngSeed seed) {
  if (ensemble == Ensemble::Perm) n = std::min(n, kPermutationCount);
  const bool exhaustive = ensemble == Ensemble::Perm && n == kPermutationCount;
  const SubsystemDims& dims = three_qubits();
  std::vector<double> values(n);
  parallel_for(chunk_count(n), [&](std::size_t c) {
    Rng rng(seed.substream(c));
    const std::size_t end = std::min(n, (c + 1) * kSampleChunk);
    for (std::size_t i = c * kSampleChunk; i < end; ++i) {
      switch (ensemble) {
        case Ensemble::Cue: values[i] = epower_one_tangle(haar_unitary(dims, rng)).total; break;
        case Ensemble::Cre: values[i] = epower_one_tangle(haar_orthogonal(dims, rng)).total; break;
        case Ensemble::Cpe: values[i] = epower_one_tangle(random_diagonal_unitary(dims, rng)).total; break;
        case Ensemble::Perm: {
          std::vector<int> perm;
          if (exhaustive) {
            perm = nth_permutation(8, i);
          } else {
            perm = nth_permutation(8, static_cast<std::uint64_t>(rng.uniform() * kPermutationCount) %
                                          kPermutationCount);
          }
          values[i] = epower_one_tangle(permutation_matrix(perm, dims)).total;
          break;
        }
      }
    }
  });
  return values;
}

Histogram make_histogram(std::span<const double> values, int bins, double lo, double hi) {
  if (bins < 1) throw ArgumentError("need at least one bin");
  if (!(hi > lo)) throw ArgumentError("histogram range is empty");
  if (values.empty()) throw ArgumentError("no values to bin");
  Histogram h;
  h.lo = lo;
  h.hi = hi;
  h.samples = values.size();
  std::vector<std::size_t> counts(static_cast<std::size_t>(bins), 0);
  RunningStats stats;
  h.min = values.front();
  h.max = values.front();
  for (double v : values) {
    stats.add(v);
    h.min = std::min(h.min, v);
    h.max = std::max(h.max, v);
    const double pos = (v - lo) / (hi - lo) * bins;
    const auto bin = static_cast<std::size_t>(std::clamp(std::floor(pos), 0.0, bins - 1.0));
    ++counts[bin];
  }
  for (std::size_t c : counts) {
    h.probabilities.push_back(static_cast<double>(c) / static_cast<double>(values.size()));
  }
  h.mean = stats.mean();
  h.std_error = stats.std_error();
  return h;
}

std::string histogram_csv(const Histogram& h, Ensemble ensemble) {
  std::string out = "bin_lo,bin_hi,probability\n";
  const auto bins = static_cast<double>(h.probabilities.size());
  for (std::size_t b = 0; b < h.probabilities.size(); ++b) {
    const double lo = h.lo + (h.hi - h.lo) * static_cast<double>(b) / bins;
    const double hi = h.lo + (h.hi - h.lo) * static_cast<double>(b + 1) / bins;
    out += format_double(lo) + "," + format_double(hi) + "," + format_double(h.probabilities[b]) + "\n";
  }
  out += "# ensemble=" + std::string(ensemble_name(ensemble)) + " samples=" + std::to_string(h.samples) +
         " mean=" + format_double(h.mean) + " std_error=" + format_double(h.std_error) +
         " min=" + format_double(h.min) + " max=" + format_double(h.max) + "\n";
  return out;
}

// --- scaling tables -------------------------------------------------------

std::vector<QuditDRow> scaling_qudit_d(int n, int d_min, int d_max) {
  if (d_min < 2 || d_max < d_min) throw ArgumentError("need 2 <= d-min <= d-max");
  std::vector<QuditDRow> rows;
  for (int d = d_min; d <= d_max; ++d) {
    rows.push_back({d, mean_qudit_unitary(n, d), upper_bound_qudit(n, d), max_tau_one(d)});
  }
  return rows;
}

std::vector<QuditNRow> scaling_qudit_n(int n_min, int n_max, std::span<const int> ds) {
  if (n_min < 2 || n_max < n_min) throw ArgumentError("need 2 <= n-min <= n-max");
  if (ds.empty()) throw ArgumentError("need at least one local dimension");
  std::vector<QuditNRow> rows;
  for (int d : ds) {
    for (int n = n_min; n <= n_max; ++n) {
      const Rational mu = mean_qudit_unitary(n, d);
      rows.push_back({n, d, mu / upper_bound_qudit(n, d), mean_qudit_orthogonal(n, d) / mu});
    }
  }
  return rows;
}

std::string scaling_csv(std::span<const QuditDRow> rows) {
  std::string out = "d,mean_unitary,upper_bound,max_tau_one,mean_unitary_exact,upper_bound_exact,max_tau_one_exact\n";
  for (const auto& r : rows) {
    out += std::to_string(r.d) + "," + format_double(to_double(r.mean_unitary)) + "," +
           format_double(to_double(r.upper_bound)) + "," + format_double(to_double(r.max_tau_one)) + "," +
           to_string(r.mean_unitary) + "," + to_string(r.upper_bound) + "," + to_string(r.max_tau_one) + "\n";
  }
  return out;
}

std::string scaling_csv(std::span<const QuditNRow> rows) {
  std::string out = "n,d,mean_over_bound,orthogonal_over_unitary,mean_over_bound_exact,orthogonal_over_unitary_exact\n";
  for (const auto& r : rows) {
    out += std::to_string(r.n) + "," + std::to_string(r.d) + "," + format_double(to_double(r.mean_over_bound)) +
           "," + format_double(to_double(r.orthogonal_over_unitary)) + "," + to_string(r.mean_over_bound) + "," +
           to_string(r.orthogonal_over_unitary) + "\n";
  }
  return out;
}

// --- diagonal maximization --------------------------------------------------

DiagMaxResult maximize_diagonal(int grid, std::uint64_t seed) {
  if (grid < 1 || grid > 1024) throw ArgumentError("grid must be in [1, 1024]");
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  const double cell = kTwoPi / grid;

  DiagMaxResult result;
  std::array<double, 3> best{};
  result.grid_best = -1.0;
  for (int i = 0; i < grid; ++i) {
    for (int j = 0; j < grid; ++j) {
      for (int k = 0; k < grid; ++k) {
        const std::array<double, 3> x{i * cell, j * cell, k * cell};
        const double f = epower_diagonal_deltas(x);
        if (f > result.grid_best) {
          result.grid_best = f;
          best = x;
        }
      }
    }
  }

  Rng rng(RngSeed{seed, 0});
  using Vec3 = Eigen::Vector3d;
  Vec3 x;
  for (int a = 0; a < 3; ++a) x(a) = best[static_cast<std::size_t>(a)] + (rng.uniform() - 0.5) * cell;

  // BFGS on g = -f.
  auto value = [](const Vec3& v) { return -epower_diagonal_deltas({v(0), v(1), v(2)}); };
  auto gradient = [](const Vec3& v) {
    const auto g = epower_diagonal_deltas_gradient({v(0), v(1), v(2)});
    return Vec3(-g[0], -g[1], -g[2]);
  };
  Eigen::Matrix3d h_inv = Eigen::Matrix3d::Identity();
  Vec3 grad = gradient(x);
  double gx = value(x);
  constexpr int kMaxIter = 500;
  int it = 0;
  for (; it < kMaxIter; ++it) {
    if (grad.norm() < kDiagGradTol) break;
    Vec3 p = -h_inv * grad;
    if (p.dot(grad) >= 0.0) {
      h_inv.setIdentity();
      p = -grad;
    }
    double t = 1.0;
    Vec3 x_new = x + p;
    double g_new = value(x_new);
    while (g_new > gx + 1e-4 * t * p.dot(grad) && t > 1e-10) {
      t *= 0.5;
      x_new = x + t * p;
      g_new = value(x_new);
    }
    Vec3 grad_new = gradient(x_new);
    if (t <= 1e-10) {
      // Armijo is below rounding noise this close to the optimum; accept a
      // full step only if it shrinks the gradient.
      x_new = x + p;
      g_new = value(x_new);
      grad_new = gradient(x_new);
      if (grad_new.norm() >= grad.norm()) break;
    }
    const Vec3 s = x_new - x;
    const Vec3 y = grad_new - grad;
    const double sy = s.dot(y);
    if (sy > 1e-300) {
      const double rho = 1.0 / sy;
      const Eigen::Matrix3d id = Eigen::Matrix3d::Identity();
      h_inv = (id - rho * s * y.transpose()) * h_inv * (id - rho * y * s.transpose()) + rho * s * s.transpose();
    }
    x = x_new;
    gx = g_new;
    grad = grad_new;
  }

  for (int a = 0; a < 3; ++a) {
    double v = std::fmod(x(a), kTwoPi);
    if (v < 0.0) v += kTwoPi;
    result.argmax[static_cast<std::size_t>(a)] = v;
  }
  result.max_value = epower_diagonal_deltas(result.argmax);
  result.gradient_norm = grad.norm();
  result.iterations = it;
  result.converged = result.gradient_norm < kDiagGradTol;
  result.deviation = std::abs(result.max_value - 16.0 / 27.0);

  OmegaDelta od;
  for (auto& w : od.omegas) w = kTwoPi * rng.uniform();
  od.deltas = result.argmax;
  result.omega_closed = epower_diagonal_closed(phases_from(od));
  result.omega_general = epower_one_tangle(diagonal_gate(od)).total;
  return result;
}

std::string format_diag_max(const DiagMaxResult& r) {
  std::string out;
  out += "argmax_delta = " + format_double(r.argmax[0]) + " " + format_double(r.argmax[1]) + " " +
         format_double(r.argmax[2]) + "\n";
  out += "max = " + format_double(r.max_value) + "\n";
  out += "target = 16/27 (" + format_double(16.0 / 27.0) + ")\n";
  out += "deviation = " + format_double(r.deviation) + "\n";
  out += "grid_best = " + format_double(r.grid_best) + "\n";
  out += "gradient_norm = " + format_double(r.gradient_norm) + "\n";
  out += "iterations = " + std::to_string(r.iterations) + "\n";
  out += "omega_check_closed = " + format_double(r.omega_closed) + "\n";
  out += "omega_check_general = " + format_double(r.omega_general) + "\n";
  out += std::string("status = ") + (r.success() ? "ok" : "not converged") + "\n";
  return out;
}

// --- means and single-gate reports --------------------------------------------

McEstimate ensemble_mean(Group group, const SubsystemDims& dims, std::size_t n, RngSeed seed) {
  if (n < 2) throw ArgumentError("ensemble mean needs at least two samples");
  std::vector<RunningStats> chunks(chunk_count(n));
  parallel_for(chunks.size(), [&](std::size_t c) {
    Rng rng(seed.substream(c));
    const std::size_t end = std::min(n, (c + 1) * kSampleChunk);
    for (std::size_t i = c * kSampleChunk; i < end; ++i) {
      const GateMatrix g = group == Group::Unitary ? haar_unitary(dims, rng) : haar_orthogonal(dims, rng);
      chunks[c].add(epower_one_tangle(g).total);
    }
  });
  RunningStats total;
  for (const auto& s : chunks) total.merge(s);
  return {total.mean(), total.std_error(), total.count()};
}

MeansReport compute_means(const SubsystemDims& dims, std::size_t mc_samples, RngSeed seed) {
  MeansReport r{dims, mean_unitary(dims), mean_orthogonal(dims), upper_bound(dims), {}, {}, {}, {}, {}};
  if (dims.is_uniform() && dims[0] >= 2) {
    r.qudit_mean_unitary = mean_qudit_unitary(dims.parties(), dims[0]);
    r.qudit_mean_orthogonal = mean_qudit_orthogonal(dims.parties(), dims[0]);
    r.qudit_upper_bound = upper_bound_qudit(dims.parties(), dims[0]);
  }
  if (mc_samples > 0) {
    r.mc_unitary = ensemble_mean(Group::Unitary, dims, mc_samples, seed.substream(0));
    r.mc_orthogonal = ensemble_mean(Group::Orthogonal, dims, mc_samples, seed.substream(1));
  }
  return r;
}

std::string format_means(const MeansReport& r) {
  std::string out = "dims = " + r.dims.str() + "\n";
  out += "mean_unitary = " + exact_and_value(r.mean_unitary) + "\n";
  out += "mean_orthogonal = " + exact_and_value(r.mean_orthogonal) + "\n";
  out += "upper_bound = " + exact_and_value(r.upper_bound) + "\n";
  if (r.qudit_mean_unitary) {
    out += "qudit_mean_unitary = " + exact_and_value(*r.qudit_mean_unitary) + "\n";
    out += "qudit_mean_orthogonal = " + exact_and_value(*r.qudit_mean_orthogonal) + "\n";
    out += "qudit_upper_bound = " + exact_and_value(*r.qudit_upper_bound) + "\n";
  }
  auto mc_line = [](const char* label, const McEstimate& e) {
    return std::string(label) + " = " + format_double(e.estimate) + " +- " + format_double(e.std_error) +
           " (N=" + std::to_string(e.samples) + ")\n";
  };
  if (r.mc_unitary) out += mc_line("mc_mean_unitary", *r.mc_unitary);
  if (r.mc_orthogonal) out += mc_line("mc_mean_orthogonal", *r.mc_orthogonal);
  return out;
}

GateReport analyze_gate(const GateMatrix& gate, std::size_t mc_samples, RngSeed seed) {
  GateReport r{epower_one_tangle(gate), upper_bound(gate.dims()), std::nullopt};
  if (mc_samples > 0) r.mc = mc_entangling_power(gate, mc_samples, seed);
  return r;
}

std::string format_gate_report(const GateReport& r) {
  std::string out = "dims = " + r.epower.dims.str() + "\n";
  for (const auto& entry : r.epower.per_bipartition) {
    out += "eps[" + entry.split.label() + "] = " + format_double(entry.value) + "\n";
  }
  out += "eps1 = " + format_double(r.epower.total) + "\n";
  out += "upper_bound = " + exact_and_value(r.upper_bound) + "\n";
  if (r.mc) {
    out += "mc = " + format_double(r.mc->estimate) + " +- " + format_double(r.mc->std_error) +
           " (N=" + std::to_string(r.mc->samples) + ")\n";
  }
  return out;
}

std::string gate_report_json(const GateReport& r) {
  nlohmann::ordered_json j;
  j["dims"] = std::vector<int>(r.epower.dims.values().begin(), r.epower.dims.values().end());
  nlohmann::ordered_json per = nlohmann::ordered_json::object();
  for (const auto& entry : r.epower.per_bipartition) per[entry.split.label()] = entry.value;
  j["per_bipartition"] = per;
  j["eps1"] = r.epower.total;
  j["upper_bound"] = {{"exact", to_string(r.upper_bound)}, {"value", to_double(r.upper_bound)}};
  if (r.mc) {
    j["mc"] = {{"estimate", r.mc->estimate}, {"std_error", r.mc->std_error}, {"samples", r.mc->samples}};
  }
  return j.dump(2) + "\n";
}

}  // namespace epower
