#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "predreg/data_model.hpp"
#include "predreg/regression.hpp"

namespace predreg {

enum class GeneratorKind { random_walk, ar1, iid_normal, exact_linear_model };

std::string_view to_string(GeneratorKind kind) noexcept;
GeneratorKind parse_generator_kind(std::string_view text);

/// Persistent AR(1) process used for one synthetic predictor.
struct PredictorProcess {
  double mean = 0.0;
  double std_dev = 1.0;  // stationary standard deviation
  double persistence = 0.95;
};

struct GeneratorSpec {
  GeneratorKind kind = GeneratorKind::iid_normal;
  long length = 100;
  double noise_std = 1.0;
  std::uint64_t seed = 0;
  double phi = 0.0;  // ar1 coefficient

  // exact_linear_model only. Coefficients follow the design column order of a
  // damped model with `lags` return lags, cay when `include_cay`, and all
  // three ratios: [theta_1..theta_p | beta_cay | alpha_DY, beta_DY, alpha_EP,
  // beta_EP, alpha_Bm, beta_Bm].
  std::vector<double> coefficients;
  int lags = 4;
  bool include_cay = true;
  Frequency frequency = Frequency::quarterly;
  PredictorProcess dividend_yield{0.03, 0.012, 0.95};
  PredictorProcess earnings_price{0.065, 0.026, 0.95};
  PredictorProcess book_to_market{0.5, 0.25, 0.95};
  PredictorProcess cay{0.0, 0.02, 0.9};

  void validate() const;
};

using Generated = std::variant<Series, ObservationTable>;

/// Deterministic in the seed. Series kinds return a Series; the exact linear
/// model returns an observation table whose panel reproduces the damped model
/// plus Gaussian noise on every design row.
Generated generate(const GeneratorSpec& spec);

/// Literal (X'X)^-1 X'y by Gauss-Jordan elimination with partial pivoting.
/// Kept deliberately separate from the QR path it cross-checks.
Eigen::VectorXd normal_equation_oracle(const DesignMatrix& design);

}  // namespace predreg
