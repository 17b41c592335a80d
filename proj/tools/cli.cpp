#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "predreg/predreg.hpp"

namespace predreg::cli {
namespace {

namespace fs = std::filesystem;

constexpr const char* kOutDirEnv = "PREDREG_OUT_DIR";

struct RunConfig {
  std::string input;
  std::string schema;
  std::string frequency;
  std::vector<std::string> columns;
  std::vector<std::string> models;
  int insample_size = 0;  // 0: frequency default
  int horizon = 0;        // 0: frequency default
  double level = 0.01;
  std::uint64_t seed = 1;
  std::string out;
  unsigned threads = 1;

  std::string adf_mode = "constant";
  int adf_lags = -1;

  std::string grid;

  std::vector<int> moment_horizons{1, 5, 10, 50};
  std::size_t paths = 100000;

  std::string kind = "exact_linear_model";
  long length = 271;
  double noise = 0.04;
  double phi = 0.9;
  int lags = 4;
  bool no_cay = false;
  std::vector<double> coefficients;
};

// Default exact-linear-model coefficients: theta_1..theta_p, beta_cay, then
// (alpha, beta) for DY, EP, Bm.
std::vector<double> default_coefficients(int lags, bool cay) {
  std::vector<double> c;
  for (int l = 1; l <= lags; ++l) c.push_back(l == 3 ? -0.1 : 0.0);
  if (cay) c.push_back(1.0);
  for (double v : {-0.2, 4.0, 0.0, 1.0, 0.0, 0.1}) c.push_back(v);
  return c;
}

class Command {
 public:
  Command(std::string name, RunConfig config, std::ostream& out)
      : name_(std::move(name)), config_(std::move(config)), out_(out) {}

  void execute() {
    resolve_out_dir();
    if (name_ == "summarize") summarize_cmd();
    else if (name_ == "adf") adf_cmd();
    else if (name_ == "fit") fit_cmd();
    else if (name_ == "forecast") forecast_cmd();
    else if (name_ == "evaluate") evaluate_cmd();
    else if (name_ == "moment-check") moment_cmd();
    else if (name_ == "simulate") simulate_cmd();
    write_manifest();
  }

 private:
  void resolve_out_dir() {
    if (config_.out.empty()) {
      const char* env = std::getenv(kOutDirEnv);
      config_.out = env && *env ? env : ".";
    }
    std::error_code ec;
    fs::create_directories(config_.out, ec);
    if (ec) throw Error("cli", ErrorCode::io, "cannot create output directory " + config_.out + ": " + ec.message());
  }

  Schema schema() const {
    Schema s = config_.schema.empty() ? Schema{} : load_schema(config_.schema);
    if (!config_.frequency.empty()) s.frequency = parse_frequency(config_.frequency);
    for (const auto& mapping : config_.columns) {
      const auto eq = mapping.find('=');
      if (eq == std::string::npos) {
        throw Error("cli", ErrorCode::configuration, "column mapping '" + mapping + "' must be role=column");
      }
      set_schema_column(s, mapping.substr(0, eq), mapping.substr(eq + 1));
    }
    return s;
  }

  Frequency frequency() const {
    if (!config_.frequency.empty()) return parse_frequency(config_.frequency);
    return schema().frequency;
  }

  ObservationTable load() {
    if (config_.input.empty()) throw Error("cli", ErrorCode::configuration, "--input is required for " + name_);
    return load_observations(config_.input, schema());
  }

  std::vector<ModelSpec> specs(Frequency f) {
    if (config_.models.empty()) config_.models = default_models(f);
    std::vector<ModelSpec> out;
    for (const auto& m : config_.models) out.push_back(make_spec(m));
    return out;
  }

  int insample_size(Frequency f) const {
    if (config_.insample_size > 0) return config_.insample_size;
    return f == Frequency::quarterly ? 200 : 948;
  }

  int horizon(Frequency f) const {
    if (config_.horizon > 0) return config_.horizon;
    return f == Frequency::quarterly ? 4 : 12;
  }

  void emit(const std::string& file, const DelimitedTable& table, const std::string& title) {
    const fs::path path = fs::path(config_.out) / file;
    std::ofstream os(path, std::ios::binary);
    if (!os) throw Error("cli", ErrorCode::io, "cannot write " + path.string());
    write_delimited(os, table);
    outputs_.push_back(file);
    out_ << title << '\n' << format_aligned(table) << '\n';
  }

  void summarize_cmd() {
    const ObservationTable table = load();
    emit("summary.csv", summary_table(reported_series(table)),
         "Summary statistics (" + std::string(to_string(table.frequency)) + ", " + std::to_string(table.rows()) +
             " rows)");
  }

  void adf_cmd() {
    const ObservationTable table = load();
    const Deterministic mode = parse_deterministic(config_.adf_mode);
    std::vector<std::pair<std::string, AdfResult>> results;
    for (const auto& s : reported_series(table)) {
      if (s.name == "cay") continue;
      const std::optional<int> lags = config_.adf_lags >= 0 ? std::optional<int>(config_.adf_lags) : std::nullopt;
      results.emplace_back(s.name, adf_test(s.values, mode, lags, {0.01, 0.05, 0.10, config_.level}));
    }
    emit("adf.csv", adf_table(results, config_.level), "ADF unit-root tests");
  }

  void fit_cmd() {
    const ObservationTable table = load();
    const auto models = specs(table.frequency);
    const PredictorPanel panel = build_panel(table, max_lags(models));
    for (const auto& spec : models) {
      const OlsFit fit = fit_model(panel, spec);
      emit("fit_" + spec.name + ".csv", coefficient_table(fit, config_.level), "In-sample fit: " + spec.name);
      emit("fit_" + spec.name + "_stats.csv", fit_statistics_table(fit), "Fit statistics: " + spec.name);
    }
  }

  static int max_lags(const std::vector<ModelSpec>& models) {
    int lags = 1;
    for (const auto& m : models) lags = std::max(lags, m.lags);
    return lags;
  }

  std::vector<ForecastRun> run_forecasts() {
    const ObservationTable table = load();
    const auto models = specs(table.frequency);
    const PredictorPanel panel = build_panel(table, max_lags(models));
    std::vector<ForecastRun> runs;
    ForecastOptions options;
    options.threads = config_.threads;
    resolved_n_ = insample_size(table.frequency);
    resolved_h_ = horizon(table.frequency);
    for (const auto& spec : models) {
      runs.push_back(recursive_forecast(panel, spec, resolved_n_, resolved_h_, options));
    }
    return runs;
  }

  void forecast_cmd() {
    const auto runs = run_forecasts();
    const fs::path path = fs::path(config_.out) / "forecast.csv";
    std::ofstream os(path, std::ios::binary);
    if (!os) throw Error("cli", ErrorCode::io, "cannot write " + path.string());
    write_delimited(os, forecast_grid_table(runs));
    outputs_.push_back("forecast.csv");
    for (const auto& run : runs) {
      out_ << run.model << ": R=" << run.windows << " windows, " << run.records.size() << " records\n";
    }
    out_ << "grid written to " << path.string() << '\n';
  }

  void evaluate_cmd() {
    std::vector<ForecastRun> runs;
    if (!config_.grid.empty()) {
      std::ifstream in(config_.grid);
      if (!in) throw Error("cli", ErrorCode::io, "cannot open grid file " + config_.grid);
      runs = read_forecast_grid(read_delimited(in), frequency());
      if (!config_.models.empty()) {
        std::erase_if(runs, [&](const ForecastRun& r) {
          return std::find(config_.models.begin(), config_.models.end(), r.model) == config_.models.end();
        });
      }
    } else {
      runs = run_forecasts();
    }
    const RmseReport report = compare_models(runs);
    resolved_n_ = report.insample_size;
    resolved_h_ = report.horizon;
    emit("rmse.csv", rmse_table(report),
         "Out-of-sample RMSE (" + std::string(to_string(report.frequency)) + ", n=" +
             std::to_string(report.insample_size) + ", h_max=" + std::to_string(report.horizon) + ")");
  }

  void moment_cmd() {
    const MomentCheckReport report =
        appendix_moment_check(config_.moment_horizons, config_.paths, config_.seed, config_.threads);
    emit("moment_check.csv", moment_table(report), "Damped second moment E[exp(-X_t^2)] vs 1/sqrt(2t+1)");
  }

  void simulate_cmd() {
    GeneratorSpec spec;
    spec.kind = parse_generator_kind(config_.kind);
    spec.length = config_.length;
    spec.noise_std = config_.noise;
    spec.seed = config_.seed;
    spec.phi = config_.phi;
    spec.lags = config_.lags;
    spec.include_cay = !config_.no_cay;
    spec.frequency = config_.frequency.empty() ? Frequency::quarterly : parse_frequency(config_.frequency);
    spec.coefficients = config_.coefficients.empty() ? default_coefficients(spec.lags, spec.include_cay)
                                                     : config_.coefficients;
    config_.coefficients = spec.coefficients;
    const Generated generated = generate(spec);

    const fs::path path = fs::path(config_.out) / "simulated.csv";
    std::ofstream os(path, std::ios::binary);
    if (!os) throw Error("cli", ErrorCode::io, "cannot write " + path.string());
    if (const auto* table = std::get_if<ObservationTable>(&generated)) {
      write_observations(os, *table);
      out_ << "wrote " << table->rows() << " synthetic observations to " << path.string() << '\n';
    } else {
      DelimitedTable t;
      t.header = {"index", "value"};
      const auto& series = std::get<Series>(generated);
      for (std::size_t i = 0; i < series.size(); ++i) {
        t.rows.push_back({std::to_string(i + 1), format_fixed(series[i], 12)});
      }
      write_delimited(os, t);
      out_ << "wrote " << series.size() << " values to " << path.string() << '\n';
    }
    outputs_.push_back("simulated.csv");
  }

  void write_manifest() const {
    nlohmann::json m;
    m["command"] = name_;
    m["version"] = "0.1.0";
    m["seed"] = config_.seed;
    m["outputs"] = outputs_;
    if (!config_.input.empty()) m["input"] = config_.input;
    if (!config_.schema.empty()) m["schema"] = config_.schema;
    if (!config_.frequency.empty()) m["frequency"] = config_.frequency;
    if (!config_.columns.empty()) m["columns"] = config_.columns;
    if (name_ == "fit" || name_ == "forecast" || name_ == "evaluate") m["models"] = config_.models;
    if (name_ == "forecast" || name_ == "evaluate") {
      m["insample_size"] = resolved_n_;
      m["horizon"] = resolved_h_;
      if (!config_.grid.empty()) m["grid"] = config_.grid;
    }
    if (name_ == "adf" || name_ == "fit") m["level"] = config_.level;
    if (name_ == "adf") {
      m["adf_mode"] = config_.adf_mode;
      m["adf_lags"] = config_.adf_lags;
    }
    if (name_ == "moment-check") {
      m["t"] = config_.moment_horizons;
      m["paths"] = config_.paths;
    }
    if (name_ == "simulate") {
      m["kind"] = config_.kind;
      m["length"] = config_.length;
      m["noise"] = config_.noise;
      m["phi"] = config_.phi;
      m["lags"] = config_.lags;
      m["cay"] = !config_.no_cay;
      m["coefficients"] = config_.coefficients;
    }
    const fs::path path = fs::path(config_.out) / "run_manifest.json";
    std::ofstream os(path, std::ios::binary);
    if (!os) throw Error("cli", ErrorCode::io, "cannot write " + path.string());
    os << m.dump(2) << '\n';
  }

  std::string name_;
  RunConfig config_;
  std::ostream& out_;
  std::vector<std::string> outputs_;
  int resolved_n_ = 0;
  int resolved_h_ = 0;
};

std::string one_line(std::string text) {
  std::replace(text.begin(), text.end(), '\n', ' ');
  return text;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Damped multivariate predictive regression for stock-return forecasting"};
  app.name("predreg");
  app.set_config("--config", "", "TOML or INI file of option values; command-line flags take precedence");
  app.fallthrough();
  app.require_subcommand(1, 1);

  RunConfig config;
  app.add_option("--input", config.input, "Delimited observation file (header row required)");
  app.add_option("--schema", config.schema, "JSON schema mapping column roles and frequency");
  app.add_option("--frequency", config.frequency, "quarterly or monthly (overrides the schema)");
  app.add_option("--column", config.columns, "Column override role=name (repeatable)");
  app.add_option("--model", config.models, "Model name, e.g. model-1-1 (repeatable)");
  app.add_option("--insample-size", config.insample_size, "Initial in-sample size n (default 200 / 948)");
  app.add_option("--horizon", config.horizon, "Maximum forecast horizon h_max (default 4 / 12)");
  app.add_option("--level", config.level, "Significance level for reported decisions")->capture_default_str();
  app.add_option("--seed", config.seed, "Random seed")->capture_default_str();
  app.add_option("--out", config.out, std::string("Output directory (default $") + kOutDirEnv + " or .)");
  app.add_option("--threads", config.threads, "Worker threads; 0 = all cores. Outputs do not depend on it")
      ->capture_default_str();

  app.add_subcommand("summarize", "Moments and lag-1 autocorrelation of DY, EP, Bm, cay, SR");
  auto* adf = app.add_subcommand("adf", "Augmented Dickey-Fuller tests of DY, EP, Bm, SR");
  adf->add_option("--adf-mode", config.adf_mode, "none, constant or constant+trend")->capture_default_str();
  adf->add_option("--adf-lags", config.adf_lags, "Lagged differences; -1 = floor(12 (n/100)^(1/4))")
      ->capture_default_str();
  app.add_subcommand("fit", "In-sample OLS fit with t and F inference");
  app.add_subcommand("forecast", "Recursive-window multi-step forecast grid");
  auto* evaluate = app.add_subcommand("evaluate", "Per-horizon and pooled RMSE comparison");
  evaluate->add_option("--grid", config.grid, "Evaluate an existing forecast.csv instead of forecasting");
  auto* moment = app.add_subcommand("moment-check", "Monte Carlo check of E[exp(-X_t^2)] = 1/sqrt(2t+1)");
  moment->add_option("--t", config.moment_horizons, "Random-walk horizon (repeatable)");
  moment->add_option("--paths", config.paths, "Monte Carlo paths")->capture_default_str();
  auto* simulate = app.add_subcommand("simulate", "Write a seeded synthetic panel or series");
  simulate->add_option("--kind", config.kind, "random_walk, ar1, iid_normal or exact_linear_model")
      ->capture_default_str();
  simulate->add_option("--length", config.length, "Rows to generate")->capture_default_str();
  simulate->add_option("--noise", config.noise, "Noise standard deviation")->capture_default_str();
  simulate->add_option("--phi", config.phi, "AR(1) coefficient")->capture_default_str();
  simulate->add_option("--lags", config.lags, "Return lags of the exact linear model")->capture_default_str();
  simulate->add_flag("--no-cay", config.no_cay, "Omit cay from the exact linear model");
  simulate->add_option("--coef", config.coefficients, "Exact-model coefficients in design-column order (repeatable)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: module=cli code=usage message=" << one_line(e.what()) << '\n';
    return 2;
  }

  try {
    const std::string name = app.get_subcommands().front()->get_name();
    Command(name, config, out).execute();
  } catch (const Error& e) {
    err << "error: module=" << e.module() << " code=" << to_string(e.code()) << " message=" << one_line(e.what())
        << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: module=cli code=internal message=" << one_line(e.what()) << '\n';
    return 3;
  }
  return 0;
}

}  // namespace predreg::cli
