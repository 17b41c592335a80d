#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace predreg {

using Series = std::vector<double>;

enum class Frequency { quarterly, monthly };

Frequency parse_frequency(std::string_view text);
std::string_view to_string(Frequency frequency) noexcept;

/// Maps roles to column names in a delimited input file.
///
/// The cay column is optional: when `cay_required` is false the loader uses it
/// if a column with that name exists and silently omits it otherwise.
struct Schema {
  Frequency frequency = Frequency::quarterly;
  std::string date = "date";
  std::string price = "price";
  std::string dividends = "dividends";
  std::string earnings = "earnings";
  std::string book_to_market = "bm";
  std::string cay = "cay";
  bool cay_required = false;
};

/// Reads a JSON schema file:
/// `{"frequency": "quarterly", "columns": {"date": "...", "price": "...", ...}}`.
/// Naming a cay column explicitly makes it required.
Schema load_schema(const std::filesystem::path& path);

/// Applies a single `role=column` override to a schema.
void set_schema_column(Schema& schema, std::string_view role, std::string column);

struct ObservationTable {
  Frequency frequency = Frequency::quarterly;
  std::vector<std::string> period_labels;
  std::vector<int> period_index;  // ordinal: year*4+q-1 or year*12+m-1
  Series price;
  Series dividends;
  Series earnings;
  Series book_to_market;
  std::optional<Series> cay;

  std::size_t rows() const noexcept { return price.size(); }
  bool has_cay() const noexcept { return cay.has_value(); }
};

/// Throws integrity/domain errors when the table's invariants do not hold.
void validate(const ObservationTable& table);

/// Period parsing. Quarterly accepts `YYYYQn`, `YYYY-Qn`, `YYYY:Qn` and
/// `YYYY-MM[-DD]` (month mapped to its quarter); monthly accepts `YYYY-MM`,
/// `YYYYMM` and `YYYY-MM-DD`.
int parse_period(std::string_view text, Frequency frequency);
std::string format_period(int ordinal, Frequency frequency);

ObservationTable parse_observations(std::istream& in, const Schema& schema);
ObservationTable load_observations(const std::filesystem::path& path, const Schema& schema);
/// Writes the loader's default schema with `precision` fixed decimals.
void write_observations(std::ostream& out, const ObservationTable& table, int precision = 12);

/// D_t / P_{t-1}; element k corresponds to table row k + 1.
Series dividend_yield(const ObservationTable& table);
/// E_t / P_t; element k corresponds to table row k.
Series earnings_price(const ObservationTable& table);
/// (P_t - P_{t-1} + D_t) / P_{t-1}; element k corresponds to table row k + 1.
Series stock_return(const ObservationTable& table);

/// Returns and one-period-lagged predictors on a common index.
///
/// Position i holds the return realized at table row i + 1 and the predictors
/// observed at table row i, so `x_dy[i]` is the lagged dividend yield that
/// enters the regression for `y[i]`. `x_dy[0]` is NaN because the yield needs
/// a price one row before the first. Rows in [begin, end) have every lag up
/// to `max_lag` available.
struct PredictorPanel {
  Frequency frequency = Frequency::quarterly;
  int max_lag = 0;
  Series y;
  Series x_dy;
  Series x_ep;
  Series x_bm;
  std::optional<Series> x_cay;
  std::vector<std::string> labels;
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const noexcept { return y.size(); }
  std::size_t usable_rows() const noexcept { return end - begin; }
  bool has_cay() const noexcept { return x_cay.has_value(); }
};

PredictorPanel build_panel(const ObservationTable& table, int max_lag = 4);

/// Population moments (divide by n), raw kurtosis, lag-1 autocorrelation.
/// Higher moments are empty when the series has zero variance.
struct SummaryStats {
  std::size_t n = 0;
  double mean = 0.0;
  double std_dev = 0.0;
  std::optional<double> skewness;
  std::optional<double> kurtosis;
  std::optional<double> lag1_autocorr;
};

SummaryStats summarize(std::span<const double> series);

}  // namespace predreg
