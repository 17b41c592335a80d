#include "predreg/model_suite.hpp"

#include <string>

#include "predreg/error.hpp"

namespace predreg {
namespace {

const std::vector<Ratio> kAllRatios{Ratio::dividend_yield, Ratio::earnings_price, Ratio::book_to_market};

ModelSpec damped(std::string_view name, bool cay) {
  return ModelSpec{std::string(name), ModelKind::damped_multivariate, 4, kAllRatios, cay, false};
}

ModelSpec historical_mean(std::string_view name) {
  return ModelSpec{std::string(name), ModelKind::historical_mean, 0, {}, false, false};
}

ModelSpec ar4(std::string_view name) {
  return ModelSpec{std::string(name), ModelKind::autoregressive, 4, {}, false, false};
}

}  // namespace

const std::vector<std::string>& valid_model_names() {
  static const std::vector<std::string> names{"model-1-1", "model-1-2", "model-1-3", "model-1-4",
                                              "model-2-1", "model-2-2", "model-2-3"};
  return names;
}

ModelSpec make_spec(std::string_view name) {
  if (name == "model-1-1") return damped(name, true);
  if (name == "model-1-2") return historical_mean(name);
  if (name == "model-1-3") return ar4(name);
  if (name == "model-1-4") return damped(name, false);
  if (name == "model-2-1") return damped(name, false);
  if (name == "model-2-2") return historical_mean(name);
  if (name == "model-2-3") return ar4(name);

  std::string valid;
  for (const auto& n : valid_model_names()) valid += (valid.empty() ? "" : ", ") + n;
  throw Error("model-suite", ErrorCode::unknown_model,
              "unknown model '" + std::string(name) + "'; valid models: " + valid);
}

std::vector<std::string> default_models(Frequency frequency) {
  if (frequency == Frequency::quarterly) return {"model-1-1", "model-1-2", "model-1-3", "model-1-4"};
  return {"model-2-1", "model-2-2", "model-2-3"};
}

DesignMatrix model_design(const PredictorPanel& panel, const ModelSpec& spec) { return build_design(panel, spec); }

OlsFit fit_model(const PredictorPanel& panel, const ModelSpec& spec) { return ols_fit(build_design(panel, spec)); }

}  // namespace predreg
