#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "predreg/data_model.hpp"
#include "predreg/evaluation.hpp"
#include "predreg/forecast.hpp"
#include "predreg/regression.hpp"
#include "predreg/stationarity.hpp"

namespace predreg {

/// Decimal places used by every emitted report. Forecast grids carry more so
/// that RMSE recomputed from a grid file agrees with the in-memory value.
inline constexpr int kReportPrecision = 6;
inline constexpr int kGridPrecision = 10;

/// Header plus string cells; the common shape of every CLI output file.
struct DelimitedTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(const std::string& name) const;
};

std::string format_fixed(double value, int precision = kReportPrecision);
std::string format_optional(const std::optional<double>& value, int precision = kReportPrecision);
/// Inverse of format_fixed/format_optional: "NA" maps to an empty optional.
std::optional<double> parse_cell(const std::string& cell);

void write_delimited(std::ostream& out, const DelimitedTable& table);
DelimitedTable read_delimited(std::istream& in);
/// Space-padded columns for terminal display.
std::string format_aligned(const DelimitedTable& table);

struct NamedSeries {
  std::string name;
  Series values;
};

DelimitedTable summary_table(const std::vector<NamedSeries>& series);
DelimitedTable adf_table(const std::vector<std::pair<std::string, AdfResult>>& results, double level);
DelimitedTable coefficient_table(const OlsFit& fit, double level);
DelimitedTable fit_statistics_table(const OlsFit& fit);
DelimitedTable forecast_grid_table(const std::vector<ForecastRun>& runs);
DelimitedTable rmse_table(const RmseReport& report);
DelimitedTable moment_table(const MomentCheckReport& report);

/// Rebuilds forecast runs from a grid table; n is recovered from
/// target = n + r - 1 + j.
std::vector<ForecastRun> read_forecast_grid(const DelimitedTable& table, Frequency frequency);

/// The ratio and return series reported by `summarize` and `adf`:
/// DY, EP, Bm, cay (when present) and SR.
std::vector<NamedSeries> reported_series(const ObservationTable& table);

}  // namespace predreg
