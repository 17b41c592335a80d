#pragma once

#include "predreg/data_model.hpp"
#include "predreg/error.hpp"
#include "predreg/evaluation.hpp"
#include "predreg/forecast.hpp"
#include "predreg/model_spec.hpp"
#include "predreg/model_suite.hpp"
#include "predreg/random.hpp"
#include "predreg/regression.hpp"
#include "predreg/report.hpp"
#include "predreg/stationarity.hpp"
#include "predreg/synthetic.hpp"
