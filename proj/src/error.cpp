#include "trajregion/error.hpp"

namespace trajregion {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
  case ErrorCode::invalid_parameter: return "invalid_parameter";
  case ErrorCode::bad_schema: return "bad_schema";
  case ErrorCode::dimension_mismatch: return "dimension_mismatch";
  case ErrorCode::degenerate_labels: return "degenerate_labels";
  case ErrorCode::seeding_failure: return "seeding_failure";
  case ErrorCode::non_finite: return "non_finite";
  case ErrorCode::io: return "io";
  }
  return "unknown";
}

} // namespace trajregion
