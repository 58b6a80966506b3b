#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace svr {

enum class ErrorCode {
  invalid_age,
  unmapped_nationality,
  duplicate_key,
  insufficient_data,
  degenerate_signal,
  insufficient_decay,
  configuration,
  missing_slot,
  ineligible_trial,
  empty_input,
  io,
  parse,
};

std::string_view error_code_name(ErrorCode code) noexcept;

/// Library-wide exception type. The code is stable and machine-readable; the
/// message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }
  std::string_view code_name() const noexcept { return error_code_name(code_); }

 private:
  ErrorCode code_;
};

}  // namespace svr
