#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "predreg/data_model.hpp"
#include "predreg/model_spec.hpp"

namespace predreg {

struct ForecastRecord {
  int window = 0;   // r, 1-based
  int horizon = 0;  // j, 1-based
  std::size_t target_index = 0;  // 1-based position of the predicted return
  double predicted = 0.0;
  std::optional<double> realized;
};

struct ForecastRun {
  std::string model;
  Frequency frequency = Frequency::quarterly;
  int insample_size = 0;
  int horizon = 0;
  int windows = 0;
  std::size_t sample_size = 0;
  /// Ordered by (window, horizon).
  std::vector<ForecastRecord> records;
};

struct WindowCounts {
  long windows = 0;
  long records = 0;
};

/// R = N - n - h_max + 1 and R * h_max.
WindowCounts window_counts(long sample_size, long insample_size, long horizon);

struct ForecastOptions {
  /// Worker threads for window fits; 0 means hardware concurrency. The grid
  /// is identical for every value.
  unsigned threads = 1;
};

/// Expanding-window iterated forecasts.
///
/// Window r fits on positions [1, n + r - 1] and predicts positions
/// n + r - 1 + j for j = 1..h_max. Predicted returns feed later lag slots;
/// cay and the ratios stay at their last observed values.
ForecastRun recursive_forecast(const PredictorPanel& panel, const ModelSpec& spec, int insample_size,
                               int horizon, const ForecastOptions& options = {});

}  // namespace predreg
