#include <sstream>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "cli.hpp"
#include "predreg/predreg.hpp"

namespace py = pybind11;
using namespace predreg;

namespace {

std::vector<double> to_vector(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

Schema make_schema(const std::string& frequency, const std::map<std::string, std::string>& columns) {
  Schema s;
  s.frequency = parse_frequency(frequency);
  for (const auto& [role, name] : columns) set_schema_column(s, role, name);
  return s;
}

py::dict fit_dict(const OlsFit& f) {
  py::dict d;
  d["labels"] = f.labels;
  d["coefficients"] = to_vector(f.coefficients);
  d["std_errors"] = to_vector(f.std_errors);
  d["t_stats"] = to_vector(f.t_stats);
  d["p_values"] = to_vector(f.p_values);
  d["ssr"] = f.ssr;
  d["sigma2"] = f.sigma2;
  d["n"] = f.n;
  d["dof"] = f.dof;
  d["f_stat"] = f.f_stat;
  d["f_p_value"] = f.f_p_value;
  d["adj_r2"] = f.adj_r2;
  return d;
}

}  // namespace

PYBIND11_MODULE(_predreg, m) {
  m.doc() = "Damped multivariate predictive regression";

  static py::exception<Error> error(m, "PredregError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      const std::string msg = "module=" + e.module() + " code=" + std::string(to_string(e.code())) + " " + e.what();
      py::set_error(error, msg.c_str());
    }
  });

  py::class_<ObservationTable>(m, "ObservationTable")
      .def_property_readonly("frequency", [](const ObservationTable& t) { return std::string(to_string(t.frequency)); })
      .def_readonly("period_labels", &ObservationTable::period_labels)
      .def_readonly("price", &ObservationTable::price)
      .def_readonly("dividends", &ObservationTable::dividends)
      .def_readonly("earnings", &ObservationTable::earnings)
      .def_readonly("book_to_market", &ObservationTable::book_to_market)
      .def_readonly("cay", &ObservationTable::cay)
      .def("__len__", &ObservationTable::rows);

  m.def(
      "load_observations",
      [](const std::filesystem::path& path, const std::string& frequency,
         const std::map<std::string, std::string>& columns) {
        return load_observations(path, make_schema(frequency, columns));
      },
      py::arg("path"), py::arg("frequency") = "quarterly", py::arg("columns") = std::map<std::string, std::string>{});
  m.def("dividend_yield", &dividend_yield);
  m.def("earnings_price", &earnings_price);
  m.def("stock_return", &stock_return);

  m.def("summarize", [](const std::vector<double>& s) {
    const SummaryStats st = summarize(s);
    py::dict d;
    d["n"] = st.n;
    d["mean"] = st.mean;
    d["std_dev"] = st.std_dev;
    d["skewness"] = st.skewness;
    d["kurtosis"] = st.kurtosis;
    d["lag1_autocorr"] = st.lag1_autocorr;
    return d;
  });

  m.def(
      "adf_test",
      [](const std::vector<double>& s, const std::string& mode, std::optional<int> lags) {
        const AdfResult r = adf_test(s, parse_deterministic(mode), lags);
        py::dict d;
        d["t_stat"] = r.t_stat;
        d["p_value"] = r.p_value;
        d["gamma_hat"] = r.gamma_hat;
        d["se_gamma"] = r.se_gamma;
        d["lag_order"] = r.lag_order;
        d["nobs"] = r.nobs;
        d["reject_at"] = r.reject_at;
        d["critical_values"] = r.critical_values;
        return d;
      },
      py::arg("series"), py::arg("mode") = "constant", py::arg("lags") = py::none());

  m.def("damping_transform", [](const std::vector<double>& x) {
    const DampedSeries d = damping_transform(x);
    return py::make_tuple(d.mu, d.nu);
  });

  m.def(
      "fit",
      [](const ObservationTable& t, const std::string& model) {
        const ModelSpec spec = make_spec(model);
        return fit_dict(fit_model(build_panel(t, std::max(spec.lags, 1)), spec));
      },
      py::arg("table"), py::arg("model"));

  m.def("window_counts", [](long n_total, long n, long h) {
    const WindowCounts c = window_counts(n_total, n, h);
    return py::make_tuple(c.windows, c.records);
  });

  m.def(
      "forecast",
      [](const ObservationTable& t, const std::string& model, int n, int h, unsigned threads) {
        const ModelSpec spec = make_spec(model);
        const ForecastRun run = recursive_forecast(build_panel(t, std::max(spec.lags, 1)), spec, n, h, {threads});
        py::list out;
        for (const auto& r : run.records) {
          out.append(py::dict(py::arg("r") = r.window, py::arg("j") = r.horizon, py::arg("target_index") = r.target_index,
                              py::arg("predicted") = r.predicted, py::arg("realized") = r.realized));
        }
        return out;
      },
      py::arg("table"), py::arg("model"), py::arg("insample_size"), py::arg("horizon"), py::arg("threads") = 1);

  m.def(
      "evaluate",
      [](const ObservationTable& t, const std::vector<std::string>& models, int n, int h) {
        const PredictorPanel panel = build_panel(t, 4);
        std::vector<ForecastRun> runs;
        for (const auto& name : models) runs.push_back(recursive_forecast(panel, make_spec(name), n, h));
        const RmseReport report = compare_models(runs);
        py::dict d;
        for (const auto& row : report.rows) {
          d[py::str(row.model)] = py::dict(py::arg("per_horizon") = row.per_horizon, py::arg("pooled") = row.pooled);
        }
        return d;
      },
      py::arg("table"), py::arg("models"), py::arg("insample_size"), py::arg("horizon"));

  m.def(
      "moment_check",
      [](const std::vector<int>& horizons, std::size_t paths, std::uint64_t seed) {
        py::list out;
        for (const auto& r : appendix_moment_check(horizons, paths, seed).rows) {
          out.append(py::dict(py::arg("t") = r.horizon, py::arg("estimate") = r.estimate,
                              py::arg("std_error") = r.std_error, py::arg("theory") = r.theory,
                              py::arg("z_score") = r.z_score));
        }
        return out;
      },
      py::arg("horizons"), py::arg("paths") = 100000, py::arg("seed") = 1);

  m.def(
      "simulate_random_walk", &simulate_random_walk, py::arg("n"), py::arg("sigma") = 1.0, py::arg("seed") = 0);

  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::vector<const char*> argv{"predreg"};
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return py::make_tuple(code, out.str(), err.str());
  });
}
