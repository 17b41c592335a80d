#include "predreg/forecast.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <limits>
#include <string>
#include <thread>

#include "predreg/error.hpp"
#include "predreg/regression.hpp"

namespace predreg {
namespace {

constexpr const char* kModule = "forecast-engine";

[[noreturn]] void fail(ErrorCode code, const std::string& message) {
  throw Error(kModule, code, message);
}

}  // namespace

WindowCounts window_counts(long sample_size, long insample_size, long horizon) {
  if (insample_size < 1 || horizon < 1) {
    fail(ErrorCode::invalid_argument, "in-sample size and horizon must both be at least 1");
  }
  if (sample_size <= insample_size + horizon - 1) {
    fail(ErrorCode::insufficient_data, "sample of " + std::to_string(sample_size) + " is too short for n=" +
                                           std::to_string(insample_size) + " and h_max=" + std::to_string(horizon));
  }
  WindowCounts counts;
  counts.windows = sample_size - insample_size - horizon + 1;
  counts.records = counts.windows * horizon;
  return counts;
}

ForecastRun recursive_forecast(const PredictorPanel& panel, const ModelSpec& spec, int insample_size, int horizon,
                               const ForecastOptions& options) {
  const DesignMatrix full = build_design(panel, spec);
  const long sample = static_cast<long>(panel.size());
  const WindowCounts counts = window_counts(sample, insample_size, horizon);
  const int m = spec.parameter_count();
  if (insample_size < m + 10) {
    fail(ErrorCode::configuration, "in-sample size " + std::to_string(insample_size) + " is below " +
                                       std::to_string(m + 10) + " (parameters + 10) for model '" + spec.name + "'");
  }

  ForecastRun run;
  run.model = spec.name;
  run.frequency = panel.frequency;
  run.insample_size = insample_size;
  run.horizon = horizon;
  run.windows = static_cast<int>(counts.windows);
  run.sample_size = panel.size();
  run.records.resize(static_cast<std::size_t>(counts.records));

  const auto first = static_cast<long>(full.first_row);
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(counts.windows));

  const auto forecast_window = [&](int r) {
    // Positions 1..n+r-1 are observed; `origin` is the 0-based last one.
    const std::size_t origin = static_cast<std::size_t>(insample_size + r - 2);
    const long rows = static_cast<long>(origin) + 1 - first;
    DesignMatrix window;
    window.labels = full.labels;
    window.first_row = full.first_row;
    window.has_intercept = full.has_intercept;
    if (rows > 0) {
      window.x = full.x.topRows(rows);
      window.y = full.y.head(rows);
    } else {
      window.x.resize(0, full.cols());
      window.y.resize(0);
    }

    OlsFit fit;
    try {
      fit = ols_fit(window);
    } catch (const Error& e) {
      throw Error(kModule, e.code(), "window r=" + std::to_string(r) + ": " + e.what());
    }

    Series history(panel.y.begin(), panel.y.begin() + static_cast<long>(origin) + 1);
    history.resize(panel.size(), std::numeric_limits<double>::quiet_NaN());
    for (int j = 1; j <= horizon; ++j) {
      const std::size_t target = origin + static_cast<std::size_t>(j);
      const Eigen::RowVectorXd row = design_row(panel, spec, target, origin + 1, history);
      const double predicted = row.dot(fit.coefficients);
      history[target] = predicted;

      ForecastRecord& rec = run.records[static_cast<std::size_t>(r - 1) * horizon + (j - 1)];
      rec.window = r;
      rec.horizon = j;
      rec.target_index = target + 1;
      rec.predicted = predicted;
      if (target < panel.size()) rec.realized = panel.y[target];
    }
  };

  unsigned threads = options.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : options.threads;
  threads = std::min<unsigned>(threads, static_cast<unsigned>(counts.windows));
  if (threads <= 1) {
    for (int r = 1; r <= run.windows; ++r) forecast_window(r);
    return run;
  }

  std::atomic<int> next{1};
  {
    std::vector<std::jthread> workers;
    for (unsigned t = 0; t < threads; ++t) {
      workers.emplace_back([&] {
        for (int r = next++; r <= run.windows; r = next++) {
          try {
            forecast_window(r);
          } catch (...) {
            errors[static_cast<std::size_t>(r - 1)] = std::current_exception();
          }
        }
      });
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return run;
}

}  // namespace predreg
