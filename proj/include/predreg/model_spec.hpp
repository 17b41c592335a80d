#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace predreg {

enum class ModelKind { damped_multivariate, historical_mean, autoregressive };

enum class Ratio { dividend_yield, earnings_price, book_to_market };

std::string_view to_string(ModelKind kind) noexcept;
std::string_view ratio_label(Ratio ratio) noexcept;

/// Immutable description of one forecasting model.
///
/// Design columns appear in a fixed order: return lags `y_lag1..y_lagP`, then
/// `cay` when requested, then a `(<ratio>_mu, <ratio>_nu)` pair per ratio,
/// then `const` when the opt-in intercept is on. The historical-mean model is
/// the single `const` column.
struct ModelSpec {
  std::string name;
  ModelKind kind = ModelKind::damped_multivariate;
  int lags = 0;
  std::vector<Ratio> ratios;
  bool include_cay = false;
  bool intercept = false;

  int parameter_count() const noexcept;
  /// First panel position at which every regressor of this model exists.
  int first_row() const noexcept;
  std::vector<std::string> column_labels() const;
  /// Throws a configuration error when the kind's invariants are violated.
  void validate() const;
};

}  // namespace predreg
