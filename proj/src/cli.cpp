#include "epower/cli.hpp"

#include "epower/experiments.hpp"
#include "epower/io.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <functional>
#include <optional>
#include <ostream>

namespace epower {

namespace {

class NonConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::optional<SubsystemDims> dims_from(const std::vector<int>& values) {
  if (values.empty()) return std::nullopt;
  return SubsystemDims(values);
}

GateMatrix load_gate(const std::string& spec, const std::vector<int>& dims) {
  if (is_builtin_gate_name(spec)) return builtin_gate(spec, dims_from(dims));
  GateMatrix g = read_gate_file(spec);
  return dims.empty() ? g : g.with_dims(SubsystemDims(dims));
}

/// Writes `text` to `path`, or to `out` when no path is given.
void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
  } else {
    write_text_file(path, text);
  }
}

struct GateOptions {
  std::string gate;
  std::vector<int> dims;
  std::size_t mc_samples = 20000;
  std::uint64_t seed = 0;
  bool json = false;
};

struct HistogramOptions {
  std::string ensemble;
  std::size_t samples = kPermutationCount;
  int bins = 64;
  std::uint64_t seed = 0;
  std::string out;
};

struct ScalingOptions {
  std::string mode;
  int n = 3;
  int d_min = 2;
  int d_max = 16;
  int n_min = 2;
  int n_max = 8;
  std::vector<int> ds{2, 4, 16};
  std::string out;
};

struct MeansOptions {
  std::vector<int> dims;
  std::vector<int> qudit;
  std::size_t mc = 0;
  std::uint64_t seed = 0;
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Entangling power of multipartite unitary gates", "epower"};
  app.require_subcommand(1);

  std::function<void()> action;

  GateOptions gate_opts;
  auto* gate_cmd = app.add_subcommand("gate", "Report eps_1 of a builtin gate or gate file");
  gate_cmd->add_option("gate", gate_opts.gate, "Builtin name or gate file path")->required();
  gate_cmd->add_option("--dims", gate_opts.dims, "Local dimensions")->check(CLI::PositiveNumber);
  gate_cmd->add_option("--mc-samples", gate_opts.mc_samples, "Monte Carlo samples (0 disables)")
      ->capture_default_str();
  gate_cmd->add_option("--seed", gate_opts.seed, "RNG seed")->capture_default_str();
  gate_cmd->add_flag("--json", gate_opts.json, "JSON output");
  gate_cmd->callback([&] {
    action = [&] {
      if (gate_opts.mc_samples == 1) throw ArgumentError("--mc-samples must be 0 or at least 2");
      const GateMatrix g = load_gate(gate_opts.gate, gate_opts.dims);
      if (g.dims().parties() < 2) throw ArgumentError("gate needs at least two parties");
      const GateReport r = analyze_gate(g, gate_opts.mc_samples, RngSeed{gate_opts.seed, 0});
      out << (gate_opts.json ? gate_report_json(r) : format_gate_report(r));
    };
  });

  std::string export_gate;
  std::vector<int> export_dims;
  std::string export_out;
  auto* export_cmd = app.add_subcommand("export", "Write a builtin gate as a gate file");
  export_cmd->add_option("gate", export_gate, "Builtin name")->required();
  export_cmd->add_option("--dims", export_dims, "Local dimensions")->check(CLI::PositiveNumber);
  export_cmd->add_option("--out", export_out, "Output path (stdout if omitted)");
  export_cmd->callback([&] {
    action = [&] { emit(format_gate_text(load_gate(export_gate, export_dims)), export_out, out); };
  });

  int qubits = 3;
  std::string perm_out;
  auto* perm_cmd = app.add_subcommand("permutations", "Classify all permutation gates by 162 eps_1");
  perm_cmd->add_option("--qubits", qubits, "Number of qubits")->capture_default_str();
  perm_cmd->add_option("--out", perm_out, "CSV path (stdout if omitted)");
  perm_cmd->callback([&] {
    action = [&] {
      if (qubits != 3) throw ArgumentError("--qubits must be 3");
      emit(class_table_csv(permutation_census(qubits)), perm_out, out);
    };
  });

  HistogramOptions hist_opts;
  auto* hist_cmd = app.add_subcommand("histogram", "Histogram of eps_1 over a random gate ensemble");
  hist_cmd->add_option("--ensemble", hist_opts.ensemble, "cue, cre, cpe or perm")
      ->required()
      ->check(CLI::IsMember({"cue", "cre", "cpe", "perm"}));
  hist_cmd->add_option("--samples", hist_opts.samples, "Number of gates")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  hist_cmd->add_option("--bins", hist_opts.bins, "Number of bins over [0, 8/9]")
      ->capture_default_str()
      ->check(CLI::Range(1, 100000));
  hist_cmd->add_option("--seed", hist_opts.seed, "RNG seed")->capture_default_str();
  hist_cmd->add_option("--out", hist_opts.out, "CSV path (stdout if omitted)");
  hist_cmd->callback([&] {
    action = [&] {
      const Ensemble e = parse_ensemble(hist_opts.ensemble);
      const auto values = sample_ensemble(e, hist_opts.samples, RngSeed{hist_opts.seed, 0});
      const Histogram h = make_histogram(values, hist_opts.bins, 0.0, 8.0 / 9.0);
      emit(histogram_csv(h, e), hist_opts.out, out);
    };
  });

  ScalingOptions sc;
  auto* scaling_cmd = app.add_subcommand("scaling", "Exact mean and bound tables for qudit systems");
  scaling_cmd->add_option("--mode", sc.mode, "qudit-d or qudit-n")
      ->required()
      ->check(CLI::IsMember({"qudit-d", "qudit-n"}));
  scaling_cmd->add_option("--n", sc.n, "Parties (qudit-d)")->capture_default_str()->check(CLI::Range(2, 15));
  scaling_cmd->add_option("--d-min", sc.d_min, "Smallest d (qudit-d)")->capture_default_str();
  scaling_cmd->add_option("--d-max", sc.d_max, "Largest d (qudit-d)")->capture_default_str();
  scaling_cmd->add_option("--n-min", sc.n_min, "Smallest n (qudit-n)")->capture_default_str();
  scaling_cmd->add_option("--n-max", sc.n_max, "Largest n (qudit-n)")
      ->capture_default_str()
      ->check(CLI::Range(2, 15));
  scaling_cmd->add_option("--ds", sc.ds, "Local dimensions (qudit-n)")
      ->capture_default_str()
      ->check(CLI::Range(2, 1 << 16));
  scaling_cmd->add_option("--out", sc.out, "CSV path (stdout if omitted)");
  scaling_cmd->callback([&] {
    action = [&] {
      if (sc.mode == "qudit-d") {
        if (sc.d_min < 2 || sc.d_max < sc.d_min || sc.d_max > (1 << 16)) {
          throw ArgumentError("need 2 <= d-min <= d-max <= 65536");
        }
        emit(scaling_csv(scaling_qudit_d(sc.n, sc.d_min, sc.d_max)), sc.out, out);
      } else {
        if (sc.n_min < 2 || sc.n_max < sc.n_min) throw ArgumentError("need 2 <= n-min <= n-max");
        emit(scaling_csv(scaling_qudit_n(sc.n_min, sc.n_max, sc.ds)), sc.out, out);
      }
    };
  });

  int grid = 64;
  std::uint64_t diag_seed = 0;
  auto* diag_cmd = app.add_subcommand("diag-maximize", "Maximize eps_1 over diagonal three-qubit gates");
  diag_cmd->add_option("--grid", grid, "Grid points per axis")->capture_default_str()->check(CLI::Range(1, 1024));
  diag_cmd->add_option("--seed", diag_seed, "RNG seed")->capture_default_str();
  diag_cmd->callback([&] {
    action = [&] {
      const DiagMaxResult r = maximize_diagonal(grid, diag_seed);
      out << format_diag_max(r);
      if (!r.success()) throw NonConvergenceError("maximization did not reach 16/27 within 1e-8");
    };
  });

  MeansOptions mo;
  auto* means_cmd = app.add_subcommand("means", "Haar means and upper bound of eps_1");
  auto* dims_opt = means_cmd->add_option("--dims", mo.dims, "Local dimensions")->check(CLI::PositiveNumber);
  auto* qudit_opt = means_cmd->add_option("--qudit", mo.qudit, "n d")->expected(2)->check(CLI::PositiveNumber);
  dims_opt->excludes(qudit_opt);
  means_cmd->add_option("--mc", mo.mc, "Haar samples per group (0 disables)")->capture_default_str();
  means_cmd->add_option("--seed", mo.seed, "RNG seed")->capture_default_str();
  means_cmd->callback([&] {
    action = [&] {
      if (mo.mc == 1) throw ArgumentError("--mc must be 0 or at least 2");
      if (mo.dims.empty() && mo.qudit.empty()) throw ArgumentError("give --dims or --qudit");
      const SubsystemDims dims =
          mo.qudit.empty() ? SubsystemDims(mo.dims) : SubsystemDims::uniform(mo.qudit[0], mo.qudit[1]);
      if (dims.parties() < 2) throw ArgumentError("need at least two parties");
      out << format_means(compute_means(dims, mo.mc, RngSeed{mo.seed, 0}));
    };
  });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();  // program name
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitParse;
  }

  try {
    if (action) action();
    return kExitOk;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const ArgumentError& e) {
    err << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const UnsupportedError& e) {
    err << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const NonConvergenceError& e) {
    err << "error: " << e.what() << "\n";
    return kExitNonConvergence;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}

}  // namespace epower
