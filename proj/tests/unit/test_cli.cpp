#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "predreg/predreg.hpp"
#include "support.hpp"

using namespace predreg;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "predreg");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("predreg_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

fs::path simulated(const fs::path& dir, long length = 160) {
  const Result r = run_cli({"simulate", "--length", std::to_string(length), "--seed", "12", "--out", dir.string()});
  REQUIRE(r.code == 0);
  return dir / "simulated.csv";
}

DelimitedTable read_table(const fs::path& path) {
  std::ifstream in(path);
  return read_delimited(in);
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("simulate writes a panel the loader reads") {
    const fs::path dir = scratch("sim");
    const ObservationTable t = load_observations(simulated(dir), Schema{});
    CHECK(t.rows() == 160);
    CHECK(t.has_cay());
    CHECK(fs::exists(dir / "run_manifest.json"));
  }

  TEST_CASE("every subcommand succeeds and its tables re-parse") {
    const fs::path dir = scratch("all");
    const std::string input = simulated(dir).string();
    const std::string out = dir.string();
    CHECK(run_cli({"summarize", "--input", input, "--out", out}).code == 0);
    CHECK(run_cli({"adf", "--input", input, "--out", out}).code == 0);
    CHECK(run_cli({"fit", "--input", input, "--model", "model-1-1", "--out", out}).code == 0);
    CHECK(run_cli({"forecast", "--input", input, "--insample-size", "100", "--out", out}).code == 0);
    CHECK(run_cli({"evaluate", "--input", input, "--insample-size", "100", "--out", out}).code == 0);
    CHECK(run_cli({"moment-check", "--t", "1", "--t", "5", "--paths", "2000", "--out", out}).code == 0);

    for (const char* file : {"summary.csv", "adf.csv", "fit_model-1-1.csv", "fit_model-1-1_stats.csv", "forecast.csv",
                             "rmse.csv", "moment_check.csv", "simulated.csv"}) {
      CAPTURE(file);
      const DelimitedTable t = read_table(dir / file);
      CHECK_FALSE(t.rows.empty());
      std::ostringstream again;
      write_delimited(again, t);
      CHECK(again.str() == slurp(dir / file));
    }
    const DelimitedTable summary = read_table(dir / "summary.csv");
    CHECK(summary.rows.size() == 5);
    const DelimitedTable fit = read_table(dir / "fit_model-1-1.csv");
    CHECK(fit.rows.size() == 11);
  }

  TEST_CASE("grid file reproduces the in-memory RMSE") {
    const fs::path dir = scratch("grid");
    const std::string input = simulated(dir).string();
    REQUIRE(run_cli({"forecast", "--input", input, "--insample-size", "100", "--out", dir.string()}).code == 0);
    const fs::path from_grid = dir / "g";
    REQUIRE(run_cli({"evaluate", "--grid", (dir / "forecast.csv").string(), "--out", from_grid.string()}).code == 0);
    const fs::path direct = dir / "d";
    REQUIRE(run_cli({"evaluate", "--input", input, "--insample-size", "100", "--out", direct.string()}).code == 0);
    CHECK(slurp(from_grid / "rmse.csv") == slurp(direct / "rmse.csv"));
  }

  TEST_CASE("outputs are byte-identical across runs and thread counts") {
    const fs::path dir = scratch("det");
    const std::string input = simulated(dir).string();
    const fs::path a = dir / "a", b = dir / "b";
    REQUIRE(run_cli({"evaluate", "--input", input, "--insample-size", "100", "--threads", "1", "--out", a.string()})
                .code == 0);
    REQUIRE(run_cli({"evaluate", "--input", input, "--insample-size", "100", "--threads", "4", "--out", b.string()})
                .code == 0);
    CHECK(slurp(a / "rmse.csv") == slurp(b / "rmse.csv"));
    CHECK(slurp(a / "run_manifest.json") == slurp(b / "run_manifest.json"));
  }

  TEST_CASE("moment check near the closed form") {
    const fs::path dir = scratch("moment");
    const Result r = run_cli({"moment-check", "--t", "1", "--paths", "100000", "--out", dir.string()});
    REQUIRE(r.code == 0);
    const DelimitedTable t = read_table(dir / "moment_check.csv");
    const double estimate = *parse_cell(t.rows[0][t.column("estimate")]);
    CHECK(std::abs(estimate - 0.57735) < 0.005);
    CHECK(t.rows[0][t.column("theory")] == "0.577350");
  }

  TEST_CASE("unknown model fails with a single machine-readable line") {
    const fs::path dir = scratch("bad");
    const Result r = run_cli({"fit", "--input", simulated(dir).string(), "--model", "model-9-9", "--out", dir.string()});
    CHECK(r.code != 0);
    CHECK(r.err.rfind("error: module=model-suite code=unknown_model message=", 0) == 0);
    CHECK(r.err.find("model-1-1") != std::string::npos);
    CHECK(r.err.find("model-2-3") != std::string::npos);
    CHECK(std::count(r.err.begin(), r.err.end(), '\n') == 1);
  }

  TEST_CASE("missing input and bad flags") {
    const Result none = run_cli({"summarize", "--input", "/nonexistent/file.csv", "--out", scratch("io").string()});
    CHECK(none.code == 1);
    CHECK(none.err.find("code=io") != std::string::npos);
    CHECK(run_cli({"summarize", "--bogus"}).code == 2);
    CHECK(run_cli({}).code == 2);
    CHECK(run_cli({"--help"}).code == 0);
  }

  TEST_CASE("config file values yield to command-line flags") {
    const fs::path dir = scratch("config");
    const std::string input = simulated(dir).string();
    const fs::path cfg = dir / "run.toml";
    std::ofstream(cfg) << "input = \"" << input << "\"\ninsample-size = 120\nhorizon = 2\n";
    const fs::path out = dir / "o";
    REQUIRE(run_cli({"--config", cfg.string(), "evaluate", "--horizon", "3", "--out", out.string()}).code == 0);
    const DelimitedTable t = read_table(out / "rmse.csv");
    CHECK(t.header.size() == 1 + 3 + 2);
    const std::string manifest = slurp(out / "run_manifest.json");
    CHECK(manifest.find("\"insample_size\": 120") != std::string::npos);
  }

  TEST_CASE("output directory from the environment") {
    const fs::path dir = scratch("env");
    const std::string input = simulated(dir).string();
    const fs::path target = dir / "from_env";
    ::setenv("PREDREG_OUT_DIR", target.c_str(), 1);
    const Result r = run_cli({"summarize", "--input", input});
    ::unsetenv("PREDREG_OUT_DIR");
    CHECK(r.code == 0);
    CHECK(fs::exists(target / "summary.csv"));
  }
}
