#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "predreg/forecast.hpp"

namespace predreg {

double rmse_per_horizon(const ForecastRun& run, int horizon);

/// Flat RMSE over the whole (window, horizon) grid.
double rmse_pooled(const ForecastRun& run);

struct RmseRow {
  std::string model;
  std::map<int, double> per_horizon;
  std::map<int, std::size_t> counts;
  double pooled = 0.0;
  std::size_t total = 0;
};

struct RmseReport {
  Frequency frequency = Frequency::quarterly;
  int insample_size = 0;
  int horizon = 0;
  std::vector<RmseRow> rows;
  /// Index into `rows` of the smallest RMSE per horizon and for the pooled
  /// column; ties go to the earlier row.
  std::map<int, std::size_t> best_per_horizon;
  std::size_t best_pooled = 0;
};

RmseReport compare_models(std::span<const ForecastRun> runs);

}  // namespace predreg
