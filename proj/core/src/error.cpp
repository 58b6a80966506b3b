#include "svrkit/error.hpp"

namespace svr {

std::string_view error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_age: return "invalid-age";
    case ErrorCode::unmapped_nationality: return "unmapped-nationality";
    case ErrorCode::duplicate_key: return "duplicate-key";
    case ErrorCode::insufficient_data: return "insufficient-data";
    case ErrorCode::degenerate_signal: return "degenerate-signal";
    case ErrorCode::insufficient_decay: return "insufficient-decay";
    case ErrorCode::configuration: return "configuration";
    case ErrorCode::missing_slot: return "missing-slot";
    case ErrorCode::ineligible_trial: return "ineligible-trial";
    case ErrorCode::empty_input: return "empty-input";
    case ErrorCode::io: return "io";
    case ErrorCode::parse: return "parse";
  }
  return "unknown";
}

}  // namespace svr
