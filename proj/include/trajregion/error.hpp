#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace trajregion {

/// Failure categories surfaced by the library. The CLI maps each onto a
/// process exit status and a machine-parsable code string.
enum class ErrorCode {
  invalid_parameter,
  bad_schema,
  dimension_mismatch,
  degenerate_labels,
  seeding_failure,
  non_finite,
  io,
};

std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

private:
  ErrorCode code_;
};

} // namespace trajregion
