#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <algorithm>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "predreg/data_model.hpp"

namespace predreg {

enum class Deterministic { none, constant, constant_trend };

std::string_view to_string(Deterministic mode) noexcept;
Deterministic parse_deterministic(std::string_view text);

struct AdfResult {
  double gamma_hat = 0.0;
  double se_gamma = 0.0;
  double t_stat = 0.0;
  double p_value = 1.0;
  Deterministic mode = Deterministic::constant;
  int lag_order = 0;
  std::size_t nobs = 0;
  /// Keyed by significance level; a level rejects when p_value < level.
  std::map<double, bool> reject_at;
  /// Finite-sample critical values at the 1%, 5% and 10% levels.
  std::map<double, double> critical_values;
};

/// floor(12 * (n / 100)^(1/4)), capped so the regression keeps at least as
/// many observations as twice its regressor count.
int default_adf_lag_order(std::size_t n, Deterministic mode = Deterministic::constant);

/// Regresses the first difference on the lagged level, the chosen
/// deterministic terms and `lag_order` lagged differences; the test statistic
/// is the t-ratio of the lagged level.
AdfResult adf_test(std::span<const double> series, Deterministic mode = Deterministic::constant,
                   std::optional<int> lag_order = std::nullopt,
                   const std::vector<double>& levels = {0.01, 0.05, 0.10});

/// Approximate asymptotic p-value of a Dickey-Fuller t statistic from the
/// normal-CDF response surface.
double adf_p_value(double t_stat, Deterministic mode);

/// Critical value at level 0.01, 0.05 or 0.10 for a regression with `nobs`
/// observations.
double adf_critical_value(double level, Deterministic mode, std::size_t nobs);

/// exp(-x^2/2), floored at the smallest positive double so it stays strictly
/// positive where the exponential underflows (|x| above about 38.6).
inline double damped_level(double x) noexcept {
  return std::max(std::exp(-0.5 * x * x), std::numeric_limits<double>::denorm_min());
}
inline double damped_slope(double x) noexcept { return x * damped_level(x); }

struct DampedSeries {
  Series mu;  // exp(-x^2/2), in (0, 1]
  Series nu;  // x * exp(-x^2/2), |nu| <= exp(-1/2)
};

DampedSeries damping_transform(std::span<const double> x);

/// Population standard deviation of the first differences over an expanding
/// prefix: element k covers differences 0..k, so the output has one element
/// fewer than the input.
Series rolling_first_diff_std(std::span<const double> series);

/// X_1..X_n of a Gaussian random walk started at X_0 = 0.
Series simulate_random_walk(long n, double sigma, std::uint64_t seed);

struct MomentCheckRow {
  int horizon = 0;
  double estimate = 0.0;
  double std_error = 0.0;
  double theory = 0.0;
  double z_score = 0.0;
};

struct MomentCheckReport {
  std::vector<MomentCheckRow> rows;
  std::size_t paths = 0;
  std::uint64_t seed = 0;
};

/// Monte Carlo estimate of E[exp(-X_t^2)] for a unit-variance random walk,
/// compared against 1/sqrt(2t + 1). Path p draws its increments from stream p,
/// so the report does not depend on `threads`.
MomentCheckReport appendix_moment_check(const std::vector<int>& horizons, std::size_t paths,
                                        std::uint64_t seed, unsigned threads = 1);

}  // namespace predreg
