#include "predreg/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <tuple>

#include "predreg/error.hpp"

namespace predreg {
namespace {

constexpr const char* kModule = "report";

std::vector<std::string> split_cells(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) {
    if (!cell.empty() && cell.back() == '\r') cell.pop_back();
    cells.push_back(cell);
  }
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

long parse_long(const std::string& cell, const char* what) {
  long value = 0;
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (ec != std::errc{} || ptr != cell.data() + cell.size()) {
    throw Error(kModule, ErrorCode::parse, std::string("bad ") + what + " '" + cell + "'");
  }
  return value;
}

}  // namespace

std::size_t DelimitedTable::column(const std::string& name) const {
  const auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) throw Error(kModule, ErrorCode::schema, "table has no column '" + name + "'");
  return static_cast<std::size_t>(it - header.begin());
}

std::string format_fixed(double value, int precision) {
  if (std::isnan(value)) return "NA";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", precision, value);
  std::string out(buf);
  // "-0.000000" and "0.000000" are the same number; print one spelling.
  if (out.front() == '-' && out.find_first_not_of("-0.") == std::string::npos) out.erase(0, 1);
  return out;
}

std::string format_optional(const std::optional<double>& value, int precision) {
  return value ? format_fixed(*value, precision) : "NA";
}

std::optional<double> parse_cell(const std::string& cell) {
  if (cell == "NA" || cell.empty()) return std::nullopt;
  if (cell == "inf") return HUGE_VAL;
  if (cell == "-inf") return -HUGE_VAL;
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (ec != std::errc{} || ptr != cell.data() + cell.size()) {
    throw Error(kModule, ErrorCode::parse, "not a number: '" + cell + "'");
  }
  return value;
}

void write_delimited(std::ostream& out, const DelimitedTable& table) {
  const auto write_row = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
    out << '\n';
  };
  write_row(table.header);
  for (const auto& row : table.rows) write_row(row);
}

DelimitedTable read_delimited(std::istream& in) {
  DelimitedTable table;
  std::string line;
  bool have_header = false;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    auto cells = split_cells(line);
    if (!have_header) {
      table.header = std::move(cells);
      have_header = true;
      continue;
    }
    if (cells.size() != table.header.size()) {
      throw Error(kModule, ErrorCode::parse, "row " + std::to_string(table.rows.size() + 1) + " has " +
                                                 std::to_string(cells.size()) + " cells, header has " +
                                                 std::to_string(table.header.size()));
    }
    table.rows.push_back(std::move(cells));
  }
  if (!have_header) throw Error(kModule, ErrorCode::integrity, "table has no header row");
  return table;
}

std::string format_aligned(const DelimitedTable& table) {
  std::vector<std::size_t> width(table.header.size(), 0);
  const auto measure = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size() && i < width.size(); ++i) width[i] = std::max(width[i], cells[i].size());
  };
  measure(table.header);
  for (const auto& row : table.rows) measure(row);

  std::ostringstream out;
  const auto emit = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i == 0) {
        out << cells[i] << std::string(width[i] - cells[i].size(), ' ');
      } else {
        out << "  " << std::string(width[i] - cells[i].size(), ' ') << cells[i];
      }
    }
    out << '\n';
  };
  emit(table.header);
  std::size_t total = 0;
  for (auto w : width) total += w + 2;
  out << std::string(total > 2 ? total - 2 : 0, '-') << '\n';
  for (const auto& row : table.rows) emit(row);
  return out.str();
}

std::vector<NamedSeries> reported_series(const ObservationTable& table) {
  std::vector<NamedSeries> out;
  out.push_back({"DY", dividend_yield(table)});
  out.push_back({"EP", earnings_price(table)});
  out.push_back({"Bm", table.book_to_market});
  if (table.cay) out.push_back({"cay", *table.cay});
  out.push_back({"SR", stock_return(table)});
  return out;
}

DelimitedTable summary_table(const std::vector<NamedSeries>& series) {
  DelimitedTable t;
  t.header = {"variable", "mean", "std_dev", "skewness", "kurtosis", "lag1_autocorr"};
  for (const auto& s : series) {
    const SummaryStats stats = summarize(s.values);
    t.rows.push_back({s.name, format_fixed(stats.mean), format_fixed(stats.std_dev), format_optional(stats.skewness),
                      format_optional(stats.kurtosis), format_optional(stats.lag1_autocorr)});
  }
  return t;
}

DelimitedTable adf_table(const std::vector<std::pair<std::string, AdfResult>>& results, double level) {
  DelimitedTable t;
  t.header = {"variable", "adf_statistic", "p_value", "mode", "lags", "nobs", "cv_1pct", "cv_5pct", "cv_10pct",
              "reject_at_" + format_fixed(level, 2)};
  for (const auto& [name, r] : results) {
    const auto it = r.reject_at.find(level);
    const bool reject = it != r.reject_at.end() ? it->second : r.p_value < level;
    t.rows.push_back({name, format_fixed(r.t_stat), format_fixed(r.p_value), std::string(to_string(r.mode)),
                      std::to_string(r.lag_order), std::to_string(r.nobs), format_fixed(r.critical_values.at(0.01)),
                      format_fixed(r.critical_values.at(0.05)), format_fixed(r.critical_values.at(0.10)),
                      reject ? "yes" : "no"});
  }
  return t;
}

DelimitedTable coefficient_table(const OlsFit& fit, double level) {
  DelimitedTable t;
  t.header = {"term", "estimate", "std_error", "t_value", "p_value", "significant_at_" + format_fixed(level, 2)};
  for (std::size_t k = 0; k < fit.labels.size(); ++k) {
    const auto i = static_cast<Eigen::Index>(k);
    const TestDecision d = t_test(fit, fit.labels[k], level);
    t.rows.push_back({fit.labels[k], format_fixed(fit.coefficients(i)), format_fixed(fit.std_errors(i)),
                      format_fixed(fit.t_stats(i)), format_fixed(fit.p_values(i)), d.reject ? "yes" : "no"});
  }
  return t;
}

DelimitedTable fit_statistics_table(const OlsFit& fit) {
  DelimitedTable t;
  t.header = {"n", "parameters", "dof", "sigma2", "ssr", "adj_r2", "f_stat", "f_df1", "f_df2", "f_p_value"};
  t.rows.push_back({std::to_string(fit.n), std::to_string(fit.m), std::to_string(fit.dof), format_fixed(fit.sigma2),
                    format_fixed(fit.ssr), format_optional(fit.adj_r2), format_fixed(fit.f_stat),
                    std::to_string(fit.f_df1), std::to_string(fit.f_df2), format_fixed(fit.f_p_value)});
  return t;
}

DelimitedTable forecast_grid_table(const std::vector<ForecastRun>& runs) {
  DelimitedTable t;
  t.header = {"model", "r", "j", "target_index", "predicted", "realized"};
  for (const auto& run : runs) {
    for (const auto& rec : run.records) {
      t.rows.push_back({run.model, std::to_string(rec.window), std::to_string(rec.horizon),
                        std::to_string(rec.target_index), format_fixed(rec.predicted, kGridPrecision),
                        format_optional(rec.realized, kGridPrecision)});
    }
  }
  return t;
}

std::vector<ForecastRun> read_forecast_grid(const DelimitedTable& table, Frequency frequency) {
  const std::size_t c_model = table.column("model"), c_r = table.column("r"), c_j = table.column("j"),
                    c_target = table.column("target_index"), c_pred = table.column("predicted"),
                    c_real = table.column("realized");
  std::vector<ForecastRun> runs;
  std::map<std::string, std::size_t> index;
  for (const auto& row : table.rows) {
    const auto [it, inserted] = index.try_emplace(row[c_model], runs.size());
    if (inserted) {
      runs.emplace_back();
      runs.back().model = row[c_model];
      runs.back().frequency = frequency;
    }
    ForecastRun& run = runs[it->second];
    ForecastRecord rec;
    rec.window = static_cast<int>(parse_long(row[c_r], "window"));
    rec.horizon = static_cast<int>(parse_long(row[c_j], "horizon"));
    rec.target_index = static_cast<std::size_t>(parse_long(row[c_target], "target index"));
    const auto predicted = parse_cell(row[c_pred]);
    if (!predicted) throw Error(kModule, ErrorCode::parse, "missing prediction in grid");
    rec.predicted = *predicted;
    rec.realized = parse_cell(row[c_real]);
    run.records.push_back(rec);
  }
  for (auto& run : runs) {
    std::sort(run.records.begin(), run.records.end(),
              [](const ForecastRecord& a, const ForecastRecord& b) {
                return std::tie(a.window, a.horizon) < std::tie(b.window, b.horizon);
              });
    for (const auto& rec : run.records) {
      run.windows = std::max(run.windows, rec.window);
      run.horizon = std::max(run.horizon, rec.horizon);
    }
    if (!run.records.empty()) {
      const auto& first = run.records.front();
      run.insample_size = static_cast<int>(first.target_index) - first.window - first.horizon + 1;
      run.sample_size = static_cast<std::size_t>(run.insample_size + run.windows + run.horizon - 1);
    }
  }
  return runs;
}

DelimitedTable rmse_table(const RmseReport& report) {
  DelimitedTable t;
  t.header = {"model"};
  for (int j = 1; j <= report.horizon; ++j) t.header.push_back("j" + std::to_string(j));
  t.header.push_back("pooled");
  t.header.push_back("records");
  for (const auto& row : report.rows) {
    std::vector<std::string> cells{row.model};
    for (int j = 1; j <= report.horizon; ++j) cells.push_back(format_fixed(row.per_horizon.at(j)));
    cells.push_back(format_fixed(row.pooled));
    cells.push_back(std::to_string(row.total));
    t.rows.push_back(std::move(cells));
  }
  std::vector<std::string> best{"minimum"};
  for (int j = 1; j <= report.horizon; ++j) best.push_back(report.rows[report.best_per_horizon.at(j)].model);
  best.push_back(report.rows[report.best_pooled].model);
  best.emplace_back("");
  t.rows.push_back(std::move(best));
  return t;
}

DelimitedTable moment_table(const MomentCheckReport& report) {
  DelimitedTable t;
  t.header = {"t", "estimate", "std_error", "theory", "z_score", "paths", "seed"};
  for (const auto& row : report.rows) {
    t.rows.push_back({std::to_string(row.horizon), format_fixed(row.estimate), format_fixed(row.std_error),
                      format_fixed(row.theory), format_fixed(row.z_score, 3), std::to_string(report.paths),
                      std::to_string(report.seed)});
  }
  return t;
}

}  // namespace predreg
