#include "predreg/evaluation.hpp"

#include <cmath>
#include <string>

#include "predreg/error.hpp"

namespace predreg {
namespace {

constexpr const char* kModule = "evaluation";

[[noreturn]] void fail(ErrorCode code, const std::string& message) {
  throw Error(kModule, code, message);
}

double squared_error(const ForecastRun& run, const ForecastRecord& rec) {
  if (!rec.realized) {
    fail(ErrorCode::missing_realized, "model '" + run.model + "' record r=" + std::to_string(rec.window) +
                                          " j=" + std::to_string(rec.horizon) + " (target " +
                                          std::to_string(rec.target_index) + ") has no realized value");
  }
  const double e = *rec.realized - rec.predicted;
  return e * e;
}

}  // namespace

double rmse_per_horizon(const ForecastRun& run, int horizon) {
  double sum = 0.0;
  std::size_t count = 0;
  for (const auto& rec : run.records) {
    if (rec.horizon != horizon) continue;
    sum += squared_error(run, rec);
    ++count;
  }
  if (count == 0) {
    fail(ErrorCode::invalid_argument, "model '" + run.model + "' has no records at horizon " + std::to_string(horizon));
  }
  return std::sqrt(sum / static_cast<double>(count));
}

double rmse_pooled(const ForecastRun& run) {
  if (run.records.empty()) fail(ErrorCode::invalid_argument, "model '" + run.model + "' has no forecast records");
  double sum = 0.0;
  for (const auto& rec : run.records) sum += squared_error(run, rec);
  return std::sqrt(sum / static_cast<double>(run.records.size()));
}

RmseReport compare_models(std::span<const ForecastRun> runs) {
  if (runs.empty()) fail(ErrorCode::invalid_argument, "no forecast runs to compare");
  const ForecastRun& ref = runs.front();
  RmseReport report;
  report.frequency = ref.frequency;
  report.insample_size = ref.insample_size;
  report.horizon = ref.horizon;

  for (const auto& run : runs) {
    if (run.frequency != ref.frequency || run.insample_size != ref.insample_size || run.horizon != ref.horizon) {
      fail(ErrorCode::mismatched_runs, "model '" + run.model + "' was run with a different frequency, n or h_max than '" +
                                           ref.model + "'");
    }
    RmseRow row;
    row.model = run.model;
    for (int j = 1; j <= run.horizon; ++j) {
      row.per_horizon[j] = rmse_per_horizon(run, j);
      std::size_t count = 0;
      for (const auto& rec : run.records) count += rec.horizon == j ? 1 : 0;
      row.counts[j] = count;
    }
    row.pooled = rmse_pooled(run);
    row.total = run.records.size();
    report.rows.push_back(std::move(row));
  }

  for (int j = 1; j <= report.horizon; ++j) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < report.rows.size(); ++i) {
      if (report.rows[i].per_horizon.at(j) < report.rows[best].per_horizon.at(j)) best = i;
    }
    report.best_per_horizon[j] = best;
  }
  for (std::size_t i = 1; i < report.rows.size(); ++i) {
    if (report.rows[i].pooled < report.rows[report.best_pooled].pooled) report.best_pooled = i;
  }
  return report;
}

}  // namespace predreg
