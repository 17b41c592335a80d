#include "predreg/stationarity.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <thread>

#include <boost/math/distributions/normal.hpp>

#include "predreg/error.hpp"
#include "predreg/random.hpp"
#include "predreg/regression.hpp"

namespace predreg {
namespace {

constexpr const char* kModule = "stationarity";

[[noreturn]] void fail(ErrorCode code, const std::string& message) {
  throw Error(kModule, code, message);
}

std::size_t mode_index(Deterministic mode) {
  switch (mode) {
    case Deterministic::none: return 0;
    case Deterministic::constant: return 1;
    case Deterministic::constant_trend: return 2;
  }
  return 1;
}

int deterministic_terms(Deterministic mode) { return static_cast<int>(mode_index(mode)); }

// MacKinnon (1994) normal-CDF response surface for one I(1) variable.
constexpr std::array<double, 3> kTauMax{std::numeric_limits<double>::infinity(), 2.74, 0.7};
constexpr std::array<double, 3> kTauMin{-19.04, -18.83, -16.18};
constexpr std::array<double, 3> kTauStar{-1.04, -1.61, -2.89};
constexpr std::array<std::array<double, 3>, 3> kSmallP{{
    {0.6344, 1.2378, 3.2496e-2},
    {2.1659, 1.4412, 3.8269e-2},
    {3.2512, 1.6047, 4.9588e-2},
}};
constexpr std::array<std::array<double, 4>, 3> kLargeP{{
    {0.4797, 9.3557e-1, -0.6999e-1, 3.3066e-2},
    {1.7339, 9.3202e-1, -1.2745e-1, -1.0368e-2},
    {2.5261, 6.1654e-1, -3.7956e-1, -6.0285e-2},
}};

// MacKinnon (2010) finite-sample critical values: b0 + b1/T + b2/T^2 + b3/T^3
// for the 1%, 5% and 10% levels.
constexpr std::array<std::array<std::array<double, 4>, 3>, 3> kCritical{{
    {{{-2.56574, -2.2358, -3.627, 0.0}, {-1.94100, -0.2686, -3.365, 31.223}, {-1.61682, 0.2656, -2.714, 25.364}}},
    {{{-3.43035, -6.5393, -16.786, -79.433}, {-2.86154, -2.8903, -4.234, -40.040}, {-2.56677, -1.5384, -2.809, 0.0}}},
    {{{-3.95877, -9.0531, -28.428, -134.155}, {-3.41049, -4.3904, -9.036, -45.374}, {-3.12705, -2.5856, -3.925, -22.380}}},
}};

template <std::size_t N>
double horner(const std::array<double, N>& c, double x) {
  double acc = 0.0;
  for (std::size_t i = N; i-- > 0;) acc = acc * x + c[i];
  return acc;
}

}  // namespace

std::string_view to_string(Deterministic mode) noexcept {
  switch (mode) {
    case Deterministic::none: return "none";
    case Deterministic::constant: return "constant";
    case Deterministic::constant_trend: return "constant+trend";
  }
  return "constant";
}

Deterministic parse_deterministic(std::string_view text) {
  if (text == "none" || text == "n") return Deterministic::none;
  if (text == "constant" || text == "c") return Deterministic::constant;
  if (text == "constant+trend" || text == "ct" || text == "trend") return Deterministic::constant_trend;
  fail(ErrorCode::configuration, "unknown ADF deterministic mode '" + std::string(text) +
                                     "' (expected none, constant, constant+trend)");
}

int default_adf_lag_order(std::size_t n, Deterministic mode) {
  const int rule = static_cast<int>(std::floor(12.0 * std::pow(static_cast<double>(n) / 100.0, 0.25)));
  const int cap = static_cast<int>(n) / 2 - deterministic_terms(mode) - 2;
  return std::max(0, std::min(rule, cap));
}

double adf_p_value(double t_stat, Deterministic mode) {
  const std::size_t k = mode_index(mode);
  if (t_stat > kTauMax[k]) return 1.0;
  if (t_stat < kTauMin[k]) return 0.0;
  const double z = t_stat <= kTauStar[k] ? horner(kSmallP[k], t_stat) : horner(kLargeP[k], t_stat);
  return boost::math::cdf(boost::math::normal_distribution<double>(), z);
}

double adf_critical_value(double level, Deterministic mode, std::size_t nobs) {
  std::size_t col = 0;
  if (std::abs(level - 0.01) < 1e-12) col = 0;
  else if (std::abs(level - 0.05) < 1e-12) col = 1;
  else if (std::abs(level - 0.10) < 1e-12) col = 2;
  else fail(ErrorCode::invalid_argument, "critical values are tabulated for 1%, 5% and 10% only");
  if (nobs == 0) fail(ErrorCode::invalid_argument, "critical value needs a positive sample size");
  return horner(kCritical[mode_index(mode)][col], 1.0 / static_cast<double>(nobs));
}

AdfResult adf_test(std::span<const double> s, Deterministic mode, std::optional<int> lag_order,
                   const std::vector<double>& levels) {
  const int det = deterministic_terms(mode);
  const int lags = lag_order.value_or(default_adf_lag_order(s.size(), mode));
  if (lags < 0) fail(ErrorCode::invalid_argument, "lag order must be non-negative");
  const long n = static_cast<long>(s.size());
  const long nobs = n - 1 - lags;
  const long params = 1 + lags + det;
  if (n <= lags + 2 + det || nobs <= params) {
    fail(ErrorCode::insufficient_data, "ADF test with " + std::to_string(lags) + " lags needs more than " +
                                           std::to_string(std::max<long>(lags + 2 + det, 2 * lags + 2 + det)) +
                                           " observations, got " + std::to_string(n));
  }
  const auto [lo, hi] = std::minmax_element(s.begin(), s.end());
  if (*lo == *hi) fail(ErrorCode::degenerate_regression, "ADF test on a constant series");

  DesignMatrix design;
  design.x.resize(nobs, params);
  design.y.resize(nobs);
  design.labels.push_back("level_lag1");
  for (int l = 1; l <= lags; ++l) design.labels.push_back("diff_lag" + std::to_string(l));
  if (det >= 1) design.labels.push_back("const");
  if (det >= 2) design.labels.push_back("trend");
  design.has_intercept = det >= 1;

  for (long row = 0; row < nobs; ++row) {
    const long t = row + 1 + lags;  // index of the differenced observation
    design.y(row) = s[t] - s[t - 1];
    Eigen::Index c = 0;
    design.x(row, c++) = s[t - 1];
    for (int l = 1; l <= lags; ++l) design.x(row, c++) = s[t - l] - s[t - l - 1];
    if (det >= 1) design.x(row, c++) = 1.0;
    if (det >= 2) design.x(row, c++) = static_cast<double>(row + 1);
  }

  OlsFit fit;
  try {
    fit = ols_fit(design);
  } catch (const Error& e) {
    fail(ErrorCode::degenerate_regression, std::string("ADF regression failed: ") + e.what());
  }
  if (!(fit.std_errors(0) > 0.0)) fail(ErrorCode::degenerate_regression, "ADF regression has a perfect fit");

  AdfResult result;
  result.gamma_hat = fit.coefficients(0);
  result.se_gamma = fit.std_errors(0);
  result.t_stat = result.gamma_hat / result.se_gamma;
  result.p_value = adf_p_value(result.t_stat, mode);
  result.mode = mode;
  result.lag_order = lags;
  result.nobs = static_cast<std::size_t>(nobs);
  for (double level : levels) {
    if (!(level > 0.0 && level < 1.0)) fail(ErrorCode::invalid_argument, "significance level must be in (0, 1)");
    result.reject_at[level] = result.p_value < level;
  }
  for (double level : {0.01, 0.05, 0.10}) result.critical_values[level] = adf_critical_value(level, mode, result.nobs);
  return result;
}

DampedSeries damping_transform(std::span<const double> x) {
  DampedSeries out;
  out.mu.reserve(x.size());
  out.nu.reserve(x.size());
  for (double v : x) {
    const double mu = damped_level(v);
    out.mu.push_back(mu);
    out.nu.push_back(v * mu);
  }
  return out;
}

Series rolling_first_diff_std(std::span<const double> s) {
  if (s.size() < 3) fail(ErrorCode::insufficient_data, "first-difference volatility needs at least 3 observations");
  Series out;
  out.reserve(s.size() - 1);
  double mean = 0.0;
  double m2 = 0.0;
  for (std::size_t k = 1; k < s.size(); ++k) {
    const double d = s[k] - s[k - 1];
    const double count = static_cast<double>(k);
    const double delta = d - mean;
    mean += delta / count;
    m2 += delta * (d - mean);
    out.push_back(std::sqrt(std::max(0.0, m2 / count)));
  }
  return out;
}

Series simulate_random_walk(long n, double sigma, std::uint64_t seed) {
  if (n < 1) fail(ErrorCode::invalid_argument, "random walk length must be at least 1");
  if (!(sigma > 0.0) || !std::isfinite(sigma)) fail(ErrorCode::invalid_argument, "random walk step std must be positive");
  const CounterRng rng(seed, 0);
  Series out(static_cast<std::size_t>(n));
  double level = 0.0;
  for (long k = 0; k < n; ++k) {
    level += sigma * rng.normal(static_cast<std::uint64_t>(k));
    out[static_cast<std::size_t>(k)] = level;
  }
  return out;
}

MomentCheckReport appendix_moment_check(const std::vector<int>& horizons, std::size_t paths, std::uint64_t seed,
                                        unsigned threads) {
  if (paths < 1000) fail(ErrorCode::invalid_argument, "moment check needs at least 1000 paths");
  if (horizons.empty()) fail(ErrorCode::invalid_argument, "moment check needs at least one horizon");
  for (int t : horizons) {
    if (t < 0) fail(ErrorCode::invalid_argument, "horizons must be non-negative");
  }
  const int t_max = *std::max_element(horizons.begin(), horizons.end());

  // values[h * paths + p] = exp(-X_t^2) for horizon h on path p.
  std::vector<double> values(horizons.size() * paths);
  const auto run_paths = [&](std::size_t begin, std::size_t end) {
    std::vector<double> walk(static_cast<std::size_t>(t_max) + 1);
    for (std::size_t p = begin; p < end; ++p) {
      const CounterRng rng(seed, p);
      walk[0] = 0.0;
      for (int k = 1; k <= t_max; ++k) walk[k] = walk[k - 1] + rng.normal(static_cast<std::uint64_t>(k - 1));
      for (std::size_t h = 0; h < horizons.size(); ++h) {
        const double x = walk[static_cast<std::size_t>(horizons[h])];
        values[h * paths + p] = std::exp(-x * x);
      }
    }
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, paths));
  if (threads <= 1) {
    run_paths(0, paths);
  } else {
    std::vector<std::jthread> workers;
    const std::size_t chunk = (paths + threads - 1) / threads;
    for (std::size_t begin = 0; begin < paths; begin += chunk) {
      workers.emplace_back(run_paths, begin, std::min(paths, begin + chunk));
    }
  }

  MomentCheckReport report;
  report.paths = paths;
  report.seed = seed;
  const double count = static_cast<double>(paths);
  for (std::size_t h = 0; h < horizons.size(); ++h) {
    double sum = 0.0;
    for (std::size_t p = 0; p < paths; ++p) sum += values[h * paths + p];
    const double mean = sum / count;
    double ss = 0.0;
    for (std::size_t p = 0; p < paths; ++p) {
      const double d = values[h * paths + p] - mean;
      ss += d * d;
    }
    MomentCheckRow row;
    row.horizon = horizons[h];
    row.estimate = mean;
    row.std_error = std::sqrt(ss / (count - 1.0) / count);
    row.theory = 1.0 / std::sqrt(2.0 * horizons[h] + 1.0);
    // X_0 = 0 makes the t = 0 estimate exact with zero spread.
    row.z_score = row.std_error > 0.0 ? (row.estimate - row.theory) / row.std_error : 0.0;
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace predreg
