#include "epower/cli.hpp"

#include "epower/gates.hpp"
#include "epower/io.hpp"

#include <doctest.h>

#include <filesystem>
#include <sstream>

using namespace epower;

namespace {

struct Run {
  int code = -1;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "epower");
  std::ostringstream out, err;
  Run r;
  r.code = run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "epower_cli_tests";
  std::filesystem::create_directories(dir);
  const auto path = dir / name;
  std::filesystem::remove(path);
  return path;
}

}  // namespace

TEST_CASE("gate subcommand") {
  const Run t = run({"gate", "toffoli", "--mc-samples", "0"});
  CHECK(t.code == kExitOk);
  CHECK(t.out.find("eps1 = 0.370370370370370") != std::string::npos);
  CHECK(t.out.find("upper_bound = 8/9") != std::string::npos);
  CHECK(t.out.find("mc =") == std::string::npos);

  const Run id = run({"gate", "identity", "--dims", "2", "2", "2", "--mc-samples", "0"});
  CHECK(id.code == kExitOk);
  CHECK(id.out.find("eps1 = ") != std::string::npos);

  const Run h = run({"gate", "h_u8", "--mc-samples", "2000", "--seed", "7", "--json"});
  CHECK(h.code == kExitOk);
  CHECK(h.out.find("\"mc\"") != std::string::npos);
  CHECK(h.out == run({"gate", "h_u8", "--mc-samples", "2000", "--seed", "7", "--json"}).out);
}

TEST_CASE("gate files through the CLI") {
  const auto path = scratch("fredkin.txt");
  CHECK(run({"export", "fredkin", "--out", path.string()}).code == kExitOk);
  const Run r = run({"gate", path.string(), "--mc-samples", "0"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("eps1 = 0.37037037037037") != std::string::npos);

  const auto bad = scratch("bad.txt");
  write_text_file(bad.string(), "dims: 2\n1+0j 1+0j\n0+0j 1+0j\n");
  CHECK(run({"gate", bad.string()}).code == kExitValidation);
  write_text_file(bad.string(), "dims: 2\n1+0j\n");
  CHECK(run({"gate", bad.string()}).code == kExitParse);
  CHECK(run({"gate", scratch("missing.txt").string()}).code == kExitParse);
}

TEST_CASE("argument errors exit with code 2") {
  CHECK(run({}).code == kExitParse);
  CHECK(run({"nosuch"}).code == kExitParse);
  CHECK(run({"gate"}).code == kExitParse);
  CHECK(run({"gate", "deutsch:abc"}).code == kExitParse);
  CHECK(run({"gate", "toffoli", "--mc-samples", "1"}).code == kExitParse);
  CHECK(run({"histogram", "--ensemble", "gue"}).code == kExitParse);
  CHECK(run({"histogram", "--ensemble", "cue", "--bins", "0"}).code == kExitParse);
  CHECK(run({"permutations", "--qubits", "4"}).code == kExitParse);
  CHECK(run({"scaling", "--mode", "qudit-x"}).code == kExitParse);
  CHECK(run({"scaling", "--mode", "qudit-d", "--d-min", "5", "--d-max", "3"}).code == kExitParse);
  CHECK(run({"means"}).code == kExitParse);
  CHECK(run({"means", "--dims", "2", "2", "--qudit", "3", "2"}).code == kExitParse);
  CHECK(run({"means", "--dims", "4"}).code == kExitParse);
  CHECK(run({"--help"}).code == kExitOk);
}

TEST_CASE("failed runs leave no output file") {
  const auto path = scratch("never.csv");
  CHECK(run({"histogram", "--ensemble", "cue", "--bins", "-3", "--out", path.string()}).code == kExitParse);
  CHECK(run({"scaling", "--mode", "qudit-n", "--n-min", "9", "--n-max", "3", "--out", path.string()}).code ==
        kExitParse);
  CHECK_FALSE(std::filesystem::exists(path));
}

TEST_CASE("CSV output is byte-identical across runs") {
  const auto a = scratch("hist_a.csv");
  const auto b = scratch("hist_b.csv");
  const std::vector<std::string> base{"histogram", "--ensemble", "cre", "--samples", "700", "--bins", "16", "--seed", "9"};
  auto with_out = [&](const std::filesystem::path& p) {
    auto args = base;
    args.push_back("--out");
    args.push_back(p.string());
    return args;
  };
  REQUIRE(run(with_out(a)).code == kExitOk);
  REQUIRE(run(with_out(b)).code == kExitOk);
  const std::string ta = read_text_file(a.string());
  CHECK(ta == read_text_file(b.string()));
  CHECK(ta.rfind("bin_lo,bin_hi,probability\n", 0) == 0);

  const Run s1 = run({"scaling", "--mode", "qudit-n", "--n-max", "5"});
  const Run s2 = run({"scaling", "--mode", "qudit-n", "--n-max", "5"});
  CHECK(s1.code == kExitOk);
  CHECK(s1.out == s2.out);
}

TEST_CASE("means, scaling and maximization reports") {
  const Run m = run({"means", "--dims", "2", "2", "2"});
  CHECK(m.code == kExitOk);
  CHECK(m.out.find("mean_unitary = 2/3") != std::string::npos);
  CHECK(m.out.find("mean_orthogonal = 208/315") != std::string::npos);
  CHECK(m.out.find("upper_bound = 8/9") != std::string::npos);
  const Run q = run({"means", "--qudit", "3", "3"});
  CHECK(q.out.find("mean_unitary = 8/7") != std::string::npos);
  const Run mc = run({"means", "--dims", "2", "3", "--mc", "300", "--seed", "2"});
  CHECK(mc.out.find("mc_mean_unitary = ") != std::string::npos);

  const Run s = run({"scaling", "--mode", "qudit-d", "--d-max", "3"});
  CHECK(s.out.find("\n2,0.6666666666666666,0.8888888888888888,1,2/3,8/9,1\n") != std::string::npos);

  const Run d = run({"diag-maximize", "--grid", "8", "--seed", "3"});
  CHECK(d.code == kExitOk);
  CHECK(d.out.find("status = ok") != std::string::npos);
}
