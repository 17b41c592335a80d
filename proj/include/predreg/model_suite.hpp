#pragma once

#include <string_view>
#include <vector>

#include "predreg/data_model.hpp"
#include "predreg/model_spec.hpp"
#include "predreg/regression.hpp"

namespace predreg {

/// model-1-1 .. model-1-4 (quarterly) and model-2-1 .. model-2-3 (monthly).
ModelSpec make_spec(std::string_view name);

const std::vector<std::string>& valid_model_names();

/// The models compared for a given sampling frequency.
std::vector<std::string> default_models(Frequency frequency);

DesignMatrix model_design(const PredictorPanel& panel, const ModelSpec& spec);

/// Fits the model on every row of the panel where its regressors exist.
OlsFit fit_model(const PredictorPanel& panel, const ModelSpec& spec);

}  // namespace predreg
