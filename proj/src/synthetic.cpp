#include "predreg/synthetic.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "predreg/error.hpp"
#include "predreg/random.hpp"
#include "predreg/stationarity.hpp"

namespace predreg {
namespace {

constexpr const char* kModule = "synthetic-oracle";

// Returns before the first design row are not produced by the model; they are
// drawn N(0, kStartingReturnStd^2) so the lag columns are never degenerate.
constexpr double kStartingReturnStd = 0.05;

[[noreturn]] void fail(ErrorCode code, const std::string& message) {
  throw Error(kModule, code, message);
}

void check_process(const PredictorProcess& p, std::string_view name) {
  if (!(std::abs(p.persistence) < 1.0)) fail(ErrorCode::invalid_argument, std::string(name) + " persistence must satisfy |phi| < 1");
  if (!(p.std_dev >= 0.0) || !std::isfinite(p.mean)) fail(ErrorCode::invalid_argument, std::string(name) + " process is invalid");
}

Series persistent_series(const PredictorProcess& p, long length, std::uint64_t seed, std::uint64_t stream) {
  NormalStream rng(seed, stream);
  const double innovation = p.std_dev * std::sqrt(1.0 - p.persistence * p.persistence);
  Series out(static_cast<std::size_t>(length));
  double dev = p.std_dev * rng.next();
  out[0] = p.mean + dev;
  for (std::size_t t = 1; t < out.size(); ++t) {
    dev = p.persistence * dev + innovation * rng.next();
    out[t] = p.mean + dev;
  }
  return out;
}

ObservationTable exact_linear_model(const GeneratorSpec& spec) {
  const auto length = static_cast<std::size_t>(spec.length);
  const Series dy = persistent_series(spec.dividend_yield, spec.length, spec.seed, 1);
  const Series ep = persistent_series(spec.earnings_price, spec.length, spec.seed, 2);
  const Series bm = persistent_series(spec.book_to_market, spec.length, spec.seed, 3);
  const Series cay = persistent_series(spec.cay, spec.length, spec.seed, 4);
  NormalStream noise(spec.seed, 0);

  const auto& c = spec.coefficients;
  const std::size_t lags = static_cast<std::size_t>(spec.lags);
  const std::size_t start = std::max<std::size_t>(lags, 1) + 1;

  Series y(length, 0.0);
  for (std::size_t t = 1; t < length; ++t) {
    const double e = noise.next();
    if (t < start) {
      y[t] = kStartingReturnStd * e;
      continue;
    }
    std::size_t k = 0;
    double value = 0.0;
    for (std::size_t l = 1; l <= lags; ++l) value += c[k++] * y[t - l];
    if (spec.include_cay) value += c[k++] * cay[t - 1];
    for (const Series* x : {&dy, &ep, &bm}) {
      const double v = (*x)[t - 1];
      value += c[k++] * damped_level(v);
      value += c[k++] * damped_slope(v);
    }
    y[t] = value + spec.noise_std * e;
  }

  ObservationTable table;
  table.frequency = spec.frequency;
  const int base = spec.frequency == Frequency::quarterly ? 1950 * 4 : 1950 * 12;
  table.price.resize(length);
  table.dividends.resize(length);
  table.earnings.resize(length);
  table.book_to_market = bm;
  if (spec.include_cay) table.cay = cay;
  table.price[0] = 100.0;
  table.dividends[0] = dy[0] * table.price[0];
  for (std::size_t t = 1; t < length; ++t) {
    table.dividends[t] = dy[t] * table.price[t - 1];
    table.price[t] = table.price[t - 1] * (1.0 + y[t] - dy[t]);
    if (!(table.price[t] > 0.0) || !std::isfinite(table.price[t])) {
      fail(ErrorCode::domain, "generated price is not positive at row " + std::to_string(t + 1) +
                                  "; reduce the return scale or the dividend yield");
    }
  }
  for (std::size_t t = 0; t < length; ++t) {
    table.earnings[t] = ep[t] * table.price[t];
    table.period_index.push_back(base + static_cast<int>(t));
    table.period_labels.push_back(format_period(base + static_cast<int>(t), spec.frequency));
  }
  return table;
}

}  // namespace

std::string_view to_string(GeneratorKind kind) noexcept {
  switch (kind) {
    case GeneratorKind::random_walk: return "random_walk";
    case GeneratorKind::ar1: return "ar1";
    case GeneratorKind::iid_normal: return "iid_normal";
    case GeneratorKind::exact_linear_model: return "exact_linear_model";
  }
  return "iid_normal";
}

GeneratorKind parse_generator_kind(std::string_view text) {
  if (text == "random_walk") return GeneratorKind::random_walk;
  if (text == "ar1") return GeneratorKind::ar1;
  if (text == "iid_normal") return GeneratorKind::iid_normal;
  if (text == "exact_linear_model") return GeneratorKind::exact_linear_model;
  fail(ErrorCode::invalid_argument, "unknown generator '" + std::string(text) +
                                        "' (expected random_walk, ar1, iid_normal, exact_linear_model)");
}

void GeneratorSpec::validate() const {
  if (length < 1) fail(ErrorCode::invalid_argument, "generator length must be at least 1");
  if (!(noise_std >= 0.0) || !std::isfinite(noise_std)) fail(ErrorCode::invalid_argument, "noise std must be finite and >= 0");
  if (kind == GeneratorKind::ar1 && !(std::abs(phi) < 1.0)) fail(ErrorCode::invalid_argument, "ar1 coefficient must satisfy |phi| < 1");
  if (kind != GeneratorKind::exact_linear_model) return;

  if (lags < 0) fail(ErrorCode::invalid_argument, "lag count must be non-negative");
  const std::size_t expected = static_cast<std::size_t>(lags) + (include_cay ? 1 : 0) + 6;
  if (coefficients.size() != expected) {
    fail(ErrorCode::invalid_argument, "exact linear model needs " + std::to_string(expected) + " coefficients, got " +
                                          std::to_string(coefficients.size()));
  }
  for (double c : coefficients) {
    if (!std::isfinite(c)) fail(ErrorCode::invalid_argument, "coefficients must be finite");
  }
  if (length < std::max(lags, 1) + 2) fail(ErrorCode::invalid_argument, "series too short for the requested lags");
  check_process(dividend_yield, "dividend yield");
  check_process(earnings_price, "earnings-price");
  check_process(book_to_market, "book-to-market");
  check_process(cay, "cay");
}

Generated generate(const GeneratorSpec& spec) {
  spec.validate();
  if (spec.kind == GeneratorKind::exact_linear_model) return exact_linear_model(spec);

  NormalStream rng(spec.seed, 0);
  Series out(static_cast<std::size_t>(spec.length));
  switch (spec.kind) {
    case GeneratorKind::iid_normal:
      for (double& v : out) v = spec.noise_std * rng.next();
      break;
    case GeneratorKind::random_walk: {
      double level = 0.0;
      for (double& v : out) v = level += spec.noise_std * rng.next();
      break;
    }
    case GeneratorKind::ar1: {
      double x = spec.noise_std / std::sqrt(1.0 - spec.phi * spec.phi) * rng.next();
      out[0] = x;
      for (std::size_t t = 1; t < out.size(); ++t) out[t] = x = spec.phi * x + spec.noise_std * rng.next();
      break;
    }
    case GeneratorKind::exact_linear_model:
      break;
  }
  return out;
}

Eigen::VectorXd normal_equation_oracle(const DesignMatrix& design) {
  const Eigen::Index m = design.x.cols();
  if (design.x.rows() != design.y.size()) fail(ErrorCode::invalid_argument, "design rows and response length differ");
  // Augmented [X'X | X'y], reduced in place.
  Eigen::MatrixXd a(m, m + 1);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) a(i, j) = design.x.col(i).dot(design.x.col(j));
    a(i, m) = design.x.col(i).dot(design.y);
  }
  const double scale = a.leftCols(m).cwiseAbs().maxCoeff();
  if (!(scale > 0.0)) fail(ErrorCode::singular_design, "normal equations are singular");

  for (Eigen::Index col = 0; col < m; ++col) {
    Eigen::Index pivot = col;
    for (Eigen::Index r = col + 1; r < m; ++r) {
      if (std::abs(a(r, col)) > std::abs(a(pivot, col))) pivot = r;
    }
    if (std::abs(a(pivot, col)) <= 1e-13 * scale) {
      fail(ErrorCode::singular_design, "normal equations are singular at column " + std::to_string(col));
    }
    a.row(col).swap(a.row(pivot));
    a.row(col) /= a(col, col);
    for (Eigen::Index r = 0; r < m; ++r) {
      if (r != col) a.row(r) -= a(r, col) * a.row(col);
    }
  }
  return a.col(m);
}

}  // namespace predreg
