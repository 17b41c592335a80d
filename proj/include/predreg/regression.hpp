#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "predreg/data_model.hpp"
#include "predreg/model_spec.hpp"

namespace predreg {

struct DesignMatrix {
  std::vector<std::string> labels;
  Eigen::MatrixXd x;
  Eigen::VectorXd y;
  /// Panel position of the first row (0 for designs not built from a panel).
  std::size_t first_row = 0;
  /// True when one column is a constant intercept; changes the F-test null.
  bool has_intercept = false;

  Eigen::Index rows() const noexcept { return x.rows(); }
  Eigen::Index cols() const noexcept { return x.cols(); }
};

/// Checks label uniqueness, shape agreement and finiteness.
void validate(const DesignMatrix& design);

/// Rows [spec.first_row(), panel.size()) of the model's regressors.
DesignMatrix build_design(const PredictorPanel& panel, const ModelSpec& spec);

/// One design row for the regression target at `target`.
///
/// Return lags are read from `y_values[target - l]`, which lets the forecast
/// engine substitute predicted returns; cay and the damped ratio pairs are
/// taken from panel position `exog_index`.
Eigen::RowVectorXd design_row(const PredictorPanel& panel, const ModelSpec& spec, std::size_t target,
                              std::size_t exog_index, std::span<const double> y_values);

struct OlsFit {
  std::vector<std::string> labels;
  Eigen::VectorXd coefficients;
  Eigen::VectorXd std_errors;
  Eigen::VectorXd t_stats;
  Eigen::VectorXd p_values;
  Eigen::VectorXd residuals;
  Eigen::MatrixXd cov;
  double ssr = 0.0;
  double sigma2 = 0.0;
  /// Total sum of squares about the response mean.
  double tss = 0.0;
  /// Sum of squares of the restricted all-slopes-zero model: the centered
  /// TSS with an intercept, the raw sum of y^2 without one.
  double ssr_null = 0.0;
  int n = 0;
  int m = 0;
  int dof = 0;
  bool has_intercept = false;
  double f_stat = 0.0;
  double f_p_value = 1.0;
  int f_df1 = 0;
  int f_df2 = 0;
  std::optional<double> adj_r2;

  std::optional<std::size_t> index_of(std::string_view label) const;
};

/// Least squares by Householder QR. Rejects designs with n <= m and designs
/// whose reciprocal condition number is below `kMinReciprocalCondition`.
OlsFit ols_fit(const DesignMatrix& design);

inline constexpr double kMinReciprocalCondition = 1e-12;

struct TestDecision {
  double statistic = 0.0;
  double p_value = 1.0;
  double critical_value = 0.0;
  double level = 0.05;
  double df1 = 0.0;
  double df2 = 0.0;
  bool reject = false;
};

/// Two-sided t test of a zero coefficient.
TestDecision t_test(const OlsFit& fit, std::string_view label, double level = 0.05);

/// ((SSR_r - SSR_ur) / q) / (SSR_ur / dof_ur), referred to F(q, dof_ur).
TestDecision f_test(const OlsFit& unrestricted, const OlsFit& restricted, int q, double level = 0.05);

/// 1 - (ssr / dof) / (tss / (n - 1)); empty when the response is constant.
std::optional<double> adjusted_r2(const OlsFit& fit);

/// Two-sided p-value of a t statistic with `dof` degrees of freedom.
double student_t_two_sided_p(double t, double dof);
double f_upper_p(double f, double df1, double df2);

}  // namespace predreg
