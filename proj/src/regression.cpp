#include "predreg/regression.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <string>

#include <boost/math/distributions/fisher_f.hpp>
#include <boost/math/distributions/students_t.hpp>

#include "predreg/error.hpp"
#include "predreg/stationarity.hpp"

namespace predreg {
namespace {

constexpr const char* kModule = "regression";

[[noreturn]] void fail(ErrorCode code, const std::string& message) {
  throw Error(kModule, code, message);
}

const Series& ratio_series(const PredictorPanel& panel, Ratio ratio) {
  switch (ratio) {
    case Ratio::dividend_yield: return panel.x_dy;
    case Ratio::earnings_price: return panel.x_ep;
    case Ratio::book_to_market: return panel.x_bm;
  }
  return panel.x_dy;
}

}  // namespace

void validate(const DesignMatrix& design) {
  if (design.x.rows() != design.y.size()) fail(ErrorCode::invalid_argument, "design rows and response length differ");
  if (static_cast<std::size_t>(design.x.cols()) != design.labels.size()) {
    fail(ErrorCode::invalid_argument, "design column count and label count differ");
  }
  std::set<std::string> seen;
  for (const auto& label : design.labels) {
    if (!seen.insert(label).second) fail(ErrorCode::invalid_argument, "duplicate design column label '" + label + "'");
  }
  if (!design.x.allFinite()) fail(ErrorCode::invalid_argument, "design matrix has non-finite entries");
  if (!design.y.allFinite()) fail(ErrorCode::invalid_argument, "response has non-finite entries");
}

Eigen::RowVectorXd design_row(const PredictorPanel& panel, const ModelSpec& spec, std::size_t target,
                              std::size_t exog_index, std::span<const double> y_values) {
  Eigen::RowVectorXd row(spec.parameter_count());
  if (spec.kind == ModelKind::historical_mean) {
    row(0) = 1.0;
    return row;
  }
  Eigen::Index c = 0;
  for (int l = 1; l <= spec.lags; ++l) row(c++) = y_values[target - static_cast<std::size_t>(l)];
  if (spec.include_cay) row(c++) = (*panel.x_cay)[exog_index];
  for (Ratio r : spec.ratios) {
    const double x = ratio_series(panel, r)[exog_index];
    const double mu = damped_level(x);
    row(c++) = mu;
    row(c++) = x * mu;
  }
  if (spec.intercept) row(c++) = 1.0;
  return row;
}

DesignMatrix build_design(const PredictorPanel& panel, const ModelSpec& spec) {
  spec.validate();
  if (spec.include_cay && !panel.has_cay()) {
    fail(ErrorCode::configuration, "model '" + spec.name + "' needs cay but the panel has no cay column");
  }
  if (spec.lags > panel.max_lag) {
    fail(ErrorCode::configuration, "model '" + spec.name + "' uses " + std::to_string(spec.lags) +
                                       " lags but the panel was built for " + std::to_string(panel.max_lag));
  }
  const std::size_t first = static_cast<std::size_t>(spec.first_row());
  if (first >= panel.size()) fail(ErrorCode::insufficient_data, "panel too short for model '" + spec.name + "'");

  DesignMatrix design;
  design.labels = spec.column_labels();
  design.first_row = first;
  design.has_intercept = spec.kind == ModelKind::historical_mean || spec.intercept;
  const auto rows = static_cast<Eigen::Index>(panel.size() - first);
  design.x.resize(rows, spec.parameter_count());
  design.y.resize(rows);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const std::size_t i = first + static_cast<std::size_t>(r);
    design.x.row(r) = design_row(panel, spec, i, i, panel.y);
    design.y(r) = panel.y[i];
  }
  validate(design);
  return design;
}

std::optional<std::size_t> OlsFit::index_of(std::string_view label) const {
  const auto it = std::find(labels.begin(), labels.end(), label);
  if (it == labels.end()) return std::nullopt;
  return static_cast<std::size_t>(it - labels.begin());
}

double student_t_two_sided_p(double t, double dof) {
  if (std::isnan(t)) return std::numeric_limits<double>::quiet_NaN();
  if (std::isinf(t)) return 0.0;
  const boost::math::students_t_distribution<double> dist(dof);
  return std::min(1.0, 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t))));
}

double f_upper_p(double f, double df1, double df2) {
  if (std::isnan(f)) return std::numeric_limits<double>::quiet_NaN();
  if (std::isinf(f)) return 0.0;
  if (f <= 0.0) return 1.0;
  const boost::math::fisher_f_distribution<double> dist(df1, df2);
  return boost::math::cdf(boost::math::complement(dist, f));
}

OlsFit ols_fit(const DesignMatrix& design) {
  validate(design);
  const Eigen::Index n = design.rows();
  const Eigen::Index m = design.cols();
  if (m == 0) fail(ErrorCode::invalid_argument, "design has no columns");
  if (n <= m) {
    fail(ErrorCode::insufficient_observations, "need more observations than parameters (n=" + std::to_string(n) +
                                                   ", m=" + std::to_string(m) + ")");
  }

  const Eigen::HouseholderQR<Eigen::MatrixXd> qr(design.x);
  const Eigen::MatrixXd r = qr.matrixQR().topRows(m).triangularView<Eigen::Upper>();

  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(r);
  const auto& sv = svd.singularValues();
  const double smax = sv(0);
  const double smin = sv(m - 1);
  if (!(smax > 0.0) || smin / smax < kMinReciprocalCondition) {
    // |R_kk| is the distance of column k from the span of the earlier ones.
    Eigen::Index worst = 0;
    double worst_ratio = std::numeric_limits<double>::infinity();
    for (Eigen::Index k = 0; k < m; ++k) {
      const double norm = design.x.col(k).norm();
      const double ratio = norm > 0.0 ? std::abs(r(k, k)) / norm : 0.0;
      if (ratio < worst_ratio) {
        worst_ratio = ratio;
        worst = k;
      }
    }
    fail(ErrorCode::singular_design, "design is rank deficient: column '" + design.labels[worst] +
                                         "' is (nearly) a combination of the others");
  }

  OlsFit fit;
  fit.labels = design.labels;
  fit.n = static_cast<int>(n);
  fit.m = static_cast<int>(m);
  fit.dof = static_cast<int>(n - m);
  fit.has_intercept = design.has_intercept;
  fit.coefficients = qr.solve(design.y);
  fit.residuals = design.y - design.x * fit.coefficients;
  fit.ssr = fit.residuals.squaredNorm();
  fit.sigma2 = fit.ssr / fit.dof;

  const Eigen::MatrixXd r_inv =
      r.triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(m, m));
  fit.cov = fit.sigma2 * (r_inv * r_inv.transpose());
  fit.std_errors = fit.cov.diagonal().cwiseMax(0.0).cwiseSqrt();
  fit.t_stats.resize(m);
  fit.p_values.resize(m);
  for (Eigen::Index k = 0; k < m; ++k) {
    const double b = fit.coefficients(k);
    const double se = fit.std_errors(k);
    fit.t_stats(k) = se > 0.0 ? b / se : (b == 0.0 ? 0.0 : std::copysign(std::numeric_limits<double>::infinity(), b));
    fit.p_values(k) = student_t_two_sided_p(fit.t_stats(k), fit.dof);
  }

  const double mean = design.y.mean();
  fit.tss = (design.y.array() - mean).square().sum();
  fit.ssr_null = fit.has_intercept ? fit.tss : design.y.squaredNorm();
  fit.f_df1 = fit.has_intercept ? fit.m - 1 : fit.m;
  fit.f_df2 = fit.dof;
  if (fit.f_df1 > 0) {
    const double gain = std::max(0.0, fit.ssr_null - fit.ssr) / fit.f_df1;
    if (fit.ssr > 0.0) fit.f_stat = gain / (fit.ssr / fit.dof);
    else fit.f_stat = gain > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
    fit.f_p_value = f_upper_p(fit.f_stat, fit.f_df1, fit.f_df2);
  }
  fit.adj_r2 = adjusted_r2(fit);
  return fit;
}

TestDecision t_test(const OlsFit& fit, std::string_view label, double level) {
  const auto idx = fit.index_of(label);
  if (!idx) fail(ErrorCode::unknown_label, "no coefficient labelled '" + std::string(label) + "'");
  if (!(level > 0.0 && level < 1.0)) fail(ErrorCode::invalid_argument, "significance level must be in (0, 1)");
  TestDecision d;
  d.level = level;
  d.df1 = fit.dof;
  d.statistic = fit.t_stats(static_cast<Eigen::Index>(*idx));
  d.p_value = student_t_two_sided_p(d.statistic, fit.dof);
  const boost::math::students_t_distribution<double> dist(fit.dof);
  d.critical_value = boost::math::quantile(boost::math::complement(dist, level / 2.0));
  d.reject = std::abs(d.statistic) > d.critical_value;
  return d;
}

TestDecision f_test(const OlsFit& unrestricted, const OlsFit& restricted, int q, double level) {
  if (q < 1) fail(ErrorCode::invalid_argument, "restriction count must be at least 1");
  if (!(level > 0.0 && level < 1.0)) fail(ErrorCode::invalid_argument, "significance level must be in (0, 1)");
  if (unrestricted.n != restricted.n) fail(ErrorCode::not_nested, "restricted and unrestricted fits use different samples");
  for (const auto& label : restricted.labels) {
    if (!unrestricted.index_of(label)) {
      fail(ErrorCode::not_nested, "restricted regressor '" + label + "' is not in the unrestricted model");
    }
  }
  const double tolerance = 1e-10 * std::max(1.0, restricted.ssr);
  if (restricted.ssr < unrestricted.ssr - tolerance) {
    fail(ErrorCode::not_nested, "restricted SSR is below the unrestricted SSR");
  }
  TestDecision d;
  d.level = level;
  d.df1 = q;
  d.df2 = unrestricted.dof;
  const double gain = std::max(0.0, restricted.ssr - unrestricted.ssr) / q;
  if (unrestricted.ssr > 0.0) d.statistic = gain / (unrestricted.ssr / unrestricted.dof);
  else d.statistic = gain > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
  d.p_value = f_upper_p(d.statistic, d.df1, d.df2);
  const boost::math::fisher_f_distribution<double> dist(d.df1, d.df2);
  d.critical_value = boost::math::quantile(boost::math::complement(dist, level));
  d.reject = d.statistic > d.critical_value;
  return d;
}

std::optional<double> adjusted_r2(const OlsFit& fit) {
  if (!(fit.tss > 0.0) || fit.n < 2 || fit.dof < 1) return std::nullopt;
  return 1.0 - (fit.ssr / fit.dof) / (fit.tss / (fit.n - 1));
}

}  // namespace predreg
