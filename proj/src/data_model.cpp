#include "predreg/data_model.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "predreg/error.hpp"

namespace predreg {
namespace {

constexpr const char* kModule = "data-model";

[[noreturn]] void fail(ErrorCode code, const std::string& message) {
  throw Error(kModule, code, message);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '"')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '"' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(trim(line.substr(start)));
      break;
    }
    fields.push_back(trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
  return fields;
}

bool parse_int(std::string_view s, int& out) {
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc{} && ptr == end;
}

double parse_number(std::string_view s, std::size_t row, std::string_view column) {
  double value = 0.0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, value);
  if (s.empty() || ec != std::errc{} || ptr != end || !std::isfinite(value)) {
    fail(ErrorCode::parse, "row " + std::to_string(row) + ": column '" + std::string(column) +
                               "' is not a finite number: '" + std::string(s) + "'");
  }
  return value;
}

}  // namespace

Frequency parse_frequency(std::string_view text) {
  if (text == "quarterly" || text == "q") return Frequency::quarterly;
  if (text == "monthly" || text == "m") return Frequency::monthly;
  fail(ErrorCode::configuration,
       "unknown frequency '" + std::string(text) + "' (expected quarterly or monthly)");
}

std::string_view to_string(Frequency frequency) noexcept {
  return frequency == Frequency::quarterly ? "quarterly" : "monthly";
}

void set_schema_column(Schema& schema, std::string_view role, std::string column) {
  if (role == "date") schema.date = std::move(column);
  else if (role == "price") schema.price = std::move(column);
  else if (role == "dividends") schema.dividends = std::move(column);
  else if (role == "earnings") schema.earnings = std::move(column);
  else if (role == "bm") schema.book_to_market = std::move(column);
  else if (role == "cay") {
    schema.cay = std::move(column);
    schema.cay_required = true;
  } else {
    fail(ErrorCode::schema, "unknown column role '" + std::string(role) +
                                "' (expected date, price, dividends, earnings, bm, cay)");
  }
}

Schema load_schema(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::io, "cannot open schema file " + path.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::schema, "malformed schema file " + path.string() + ": " + e.what());
  }
  Schema schema;
  if (doc.contains("frequency")) schema.frequency = parse_frequency(doc.at("frequency").get<std::string>());
  if (doc.contains("columns")) {
    for (const auto& [role, column] : doc.at("columns").items()) {
      if (!column.is_string()) fail(ErrorCode::schema, "column mapping for '" + role + "' must be a string");
      set_schema_column(schema, role, column.get<std::string>());
    }
  }
  return schema;
}

int parse_period(std::string_view text, Frequency frequency) {
  text = trim(text);
  const auto bad = [&]() -> int {
    fail(ErrorCode::parse, "cannot parse " + std::string(to_string(frequency)) + " period '" +
                               std::string(text) + "'");
  };
  if (text.size() < 6) return bad();
  int year = 0;
  if (!parse_int(text.substr(0, 4), year)) return bad();
  std::string_view rest = text.substr(4);

  const auto q_pos = rest.find_first_of("Qq");
  if (q_pos != std::string_view::npos) {
    if (frequency != Frequency::quarterly) return bad();
    const auto sep = rest.substr(0, q_pos);
    if (!(sep.empty() || sep == "-" || sep == ":" || sep == " ")) return bad();
    int quarter = 0;
    if (!parse_int(rest.substr(q_pos + 1), quarter) || quarter < 1 || quarter > 4) return bad();
    return year * 4 + quarter - 1;
  }

  int month = 0;
  if (rest.front() == '-') {
    const auto month_text = rest.substr(1, 2);
    if (!parse_int(month_text, month)) return bad();
    const auto tail = rest.substr(std::min<std::size_t>(3, rest.size()));
    if (!tail.empty()) {
      int day = 0;
      if (tail.front() != '-' || !parse_int(tail.substr(1), day) || day < 1 || day > 31) return bad();
    }
  } else if (!parse_int(rest, month) || rest.size() != 2) {
    return bad();
  }
  if (month < 1 || month > 12) return bad();
  if (frequency == Frequency::quarterly) return year * 4 + (month - 1) / 3;
  return year * 12 + month - 1;
}

std::string format_period(int ordinal, Frequency frequency) {
  std::ostringstream out;
  if (frequency == Frequency::quarterly) {
    out << ordinal / 4 << 'Q' << ordinal % 4 + 1;
  } else {
    out << ordinal / 12 << '-' << std::setw(2) << std::setfill('0') << ordinal % 12 + 1;
  }
  return out.str();
}

void validate(const ObservationTable& table) {
  const std::size_t n = table.rows();
  if (n == 0) fail(ErrorCode::integrity, "observation table is empty");
  const auto same = [n](const auto& v) { return v.size() == n; };
  if (!same(table.period_index) || !same(table.period_labels) || !same(table.dividends) ||
      !same(table.earnings) || !same(table.book_to_market) || (table.cay && !same(*table.cay))) {
    fail(ErrorCode::integrity, "observation table columns have different lengths");
  }
  for (std::size_t i = 1; i < n; ++i) {
    if (table.period_index[i] == table.period_index[i - 1]) {
      fail(ErrorCode::integrity, "duplicated date " + table.period_labels[i] + " at row " + std::to_string(i + 1));
    }
    if (table.period_index[i] < table.period_index[i - 1]) {
      fail(ErrorCode::integrity, "dates not increasing at row " + std::to_string(i + 1) + " (" +
                                     table.period_labels[i - 1] + " then " + table.period_labels[i] + ")");
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!(table.price[i] > 0.0)) {
      fail(ErrorCode::domain, "price must be positive at row " + std::to_string(i + 1) + " (" +
                                  table.period_labels[i] + ")");
    }
  }
}

ObservationTable parse_observations(std::istream& in, const Schema& schema) {
  std::string line;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    for (auto field : split(line)) header.emplace_back(field);
    break;
  }
  if (header.empty()) fail(ErrorCode::integrity, "input has no header row");

  const auto column_of = [&](const std::string& name) -> std::optional<std::size_t> {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) return std::nullopt;
    return static_cast<std::size_t>(it - header.begin());
  };
  const auto require = [&](const std::string& name, std::string_view role) {
    const auto idx = column_of(name);
    if (!idx) fail(ErrorCode::schema, "missing column '" + name + "' for role " + std::string(role));
    return *idx;
  };

  const std::size_t date_col = require(schema.date, "date");
  const std::size_t price_col = require(schema.price, "price");
  const std::size_t div_col = require(schema.dividends, "dividends");
  const std::size_t earn_col = require(schema.earnings, "earnings");
  const std::size_t bm_col = require(schema.book_to_market, "bm");
  std::optional<std::size_t> cay_col = column_of(schema.cay);
  if (schema.cay_required && !cay_col) fail(ErrorCode::schema, "missing column '" + schema.cay + "' for role cay");

  ObservationTable table;
  table.frequency = schema.frequency;
  if (cay_col) table.cay.emplace();

  std::size_t row = 0;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    ++row;
    const auto fields = split(line);
    if (fields.size() != header.size()) {
      fail(ErrorCode::parse, "row " + std::to_string(row) + ": expected " + std::to_string(header.size()) +
                                 " fields, found " + std::to_string(fields.size()));
    }
    table.period_labels.emplace_back(fields[date_col]);
    table.period_index.push_back(parse_period(fields[date_col], schema.frequency));
    table.price.push_back(parse_number(fields[price_col], row, schema.price));
    table.dividends.push_back(parse_number(fields[div_col], row, schema.dividends));
    table.earnings.push_back(parse_number(fields[earn_col], row, schema.earnings));
    table.book_to_market.push_back(parse_number(fields[bm_col], row, schema.book_to_market));
    if (cay_col) table.cay->push_back(parse_number(fields[*cay_col], row, schema.cay));
  }
  validate(table);
  return table;
}

ObservationTable load_observations(const std::filesystem::path& path, const Schema& schema) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::io, "cannot open input file " + path.string());
  return parse_observations(in, schema);
}

void write_observations(std::ostream& out, const ObservationTable& table, int precision) {
  out << "date,price,dividends,earnings,bm";
  if (table.cay) out << ",cay";
  out << '\n';
  const auto old_flags = out.flags();
  const auto old_precision = out.precision();
  out << std::fixed << std::setprecision(precision);
  for (std::size_t i = 0; i < table.rows(); ++i) {
    out << table.period_labels[i] << ',' << table.price[i] << ',' << table.dividends[i] << ','
        << table.earnings[i] << ',' << table.book_to_market[i];
    if (table.cay) out << ',' << (*table.cay)[i];
    out << '\n';
  }
  out.flags(old_flags);
  out.precision(old_precision);
}

Series dividend_yield(const ObservationTable& table) {
  if (table.rows() < 2) fail(ErrorCode::insufficient_data, "dividend yield needs at least 2 rows");
  Series out(table.rows() - 1);
  for (std::size_t t = 1; t < table.rows(); ++t) {
    if (!(table.price[t - 1] > 0.0)) fail(ErrorCode::domain, "non-positive price at row " + std::to_string(t));
    out[t - 1] = table.dividends[t] / table.price[t - 1];
  }
  return out;
}

Series earnings_price(const ObservationTable& table) {
  Series out(table.rows());
  for (std::size_t t = 0; t < table.rows(); ++t) {
    if (!(table.price[t] > 0.0)) fail(ErrorCode::domain, "non-positive price at row " + std::to_string(t + 1));
    out[t] = table.earnings[t] / table.price[t];
  }
  return out;
}

Series stock_return(const ObservationTable& table) {
  if (table.rows() < 2) fail(ErrorCode::insufficient_data, "stock return needs at least 2 rows");
  Series out(table.rows() - 1);
  for (std::size_t t = 1; t < table.rows(); ++t) {
    const double prev = table.price[t - 1];
    if (!(prev > 0.0)) fail(ErrorCode::domain, "non-positive price at row " + std::to_string(t));
    out[t - 1] = (table.price[t] - prev + table.dividends[t]) / prev;
  }
  return out;
}

PredictorPanel build_panel(const ObservationTable& table, int max_lag) {
  if (max_lag < 0) fail(ErrorCode::configuration, "lag count must be non-negative");
  validate(table);
  const std::size_t rows = table.rows();
  // One row is lost to the return difference, max(lag, 1) more to the lags
  // (the dividend yield itself needs one earlier price).
  const std::size_t first = static_cast<std::size_t>(std::max(max_lag, 1));
  if (rows < first + 2) {
    fail(ErrorCode::insufficient_data, "need at least " + std::to_string(first + 2) + " rows for " +
                                           std::to_string(max_lag) + " lags, got " + std::to_string(rows));
  }

  const Series dy = dividend_yield(table);
  const Series ep = earnings_price(table);

  PredictorPanel panel;
  panel.frequency = table.frequency;
  panel.max_lag = max_lag;
  panel.y = stock_return(table);
  const std::size_t n = panel.y.size();
  panel.x_dy.assign(n, std::numeric_limits<double>::quiet_NaN());
  panel.x_ep.resize(n);
  panel.x_bm.resize(n);
  if (table.cay) panel.x_cay.emplace(n);
  panel.labels.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (i >= 1) panel.x_dy[i] = dy[i - 1];
    panel.x_ep[i] = ep[i];
    panel.x_bm[i] = table.book_to_market[i];
    if (table.cay) (*panel.x_cay)[i] = (*table.cay)[i];
    panel.labels.push_back(table.period_labels[i + 1]);
  }
  panel.begin = first;
  panel.end = n;
  return panel;
}

SummaryStats summarize(std::span<const double> s) {
  if (s.size() < 2) fail(ErrorCode::insufficient_data, "summary statistics need at least 2 observations");
  SummaryStats stats;
  stats.n = s.size();
  if (std::all_of(s.begin(), s.end(), [&](double v) { return v == s[0]; })) {
    stats.mean = s[0];
    return stats;
  }
  const double n = static_cast<double>(s.size());
  double sum = 0.0;
  for (double v : s) sum += v;
  stats.mean = sum / n;

  double m2 = 0.0, m3 = 0.0, m4 = 0.0;
  for (double v : s) {
    const double d = v - stats.mean;
    const double d2 = d * d;
    m2 += d2;
    m3 += d2 * d;
    m4 += d2 * d2;
  }
  stats.std_dev = std::sqrt(m2 / n);
  if (m2 <= 0.0) return stats;

  const double var = m2 / n;
  stats.skewness = (m3 / n) / std::pow(var, 1.5);
  stats.kurtosis = (m4 / n) / (var * var);
  double lag = 0.0;
  for (std::size_t t = 0; t + 1 < s.size(); ++t) lag += (s[t] - stats.mean) * (s[t + 1] - stats.mean);
  stats.lag1_autocorr = lag / m2;
  return stats;
}

}  // namespace predreg
