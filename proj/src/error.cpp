#include "predreg/error.hpp"

namespace predreg {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::schema: return "schema";
    case ErrorCode::parse: return "parse";
    case ErrorCode::integrity: return "integrity";
    case ErrorCode::domain: return "domain";
    case ErrorCode::insufficient_data: return "insufficient_data";
    case ErrorCode::configuration: return "configuration";
    case ErrorCode::singular_design: return "singular_design";
    case ErrorCode::insufficient_observations: return "insufficient_observations";
    case ErrorCode::degenerate_regression: return "degenerate_regression";
    case ErrorCode::invalid_argument: return "invalid_argument";
    case ErrorCode::unknown_label: return "unknown_label";
    case ErrorCode::not_nested: return "not_nested";
    case ErrorCode::missing_realized: return "missing_realized";
    case ErrorCode::mismatched_runs: return "mismatched_runs";
    case ErrorCode::unknown_model: return "unknown_model";
    case ErrorCode::io: return "io";
  }
  return "unknown";
}

}  // namespace predreg
