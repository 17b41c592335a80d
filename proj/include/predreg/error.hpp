#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace predreg {

/// Stable, machine-readable error categories. The spelling returned by
/// to_string() is part of the CLI contract and must not change.
enum class ErrorCode {
  schema,
  parse,
  integrity,
  domain,
  insufficient_data,
  configuration,
  singular_design,
  insufficient_observations,
  degenerate_regression,
  invalid_argument,
  unknown_label,
  not_nested,
  missing_realized,
  mismatched_runs,
  unknown_model,
  io,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library. `module()` names the component that
/// detected the problem (data-model, stationarity, regression, ...).
class Error : public std::runtime_error {
 public:
  Error(std::string module, ErrorCode code, const std::string& message)
      : std::runtime_error(message), module_(std::move(module)), code_(code) {}

  const std::string& module() const noexcept { return module_; }
  ErrorCode code() const noexcept { return code_; }

 private:
  std::string module_;
  ErrorCode code_;
};

}  // namespace predreg
