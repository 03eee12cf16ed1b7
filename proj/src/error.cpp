#include "jarcon/error.hpp"

namespace jarcon {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::validation: return "validation_error";
    case ErrorCode::not_found: return "not_found";
    case ErrorCode::insufficient_data: return "insufficient_data";
    case ErrorCode::degenerate_table: return "degenerate_table";
    case ErrorCode::undefined_se: return "undefined_se";
    case ErrorCode::collinearity: return "collinearity";
    case ErrorCode::range: return "range_error";
    case ErrorCode::conflict: return "conflict";
    case ErrorCode::io: return "io_error";
  }
  return "unknown";
}

}  // namespace jarcon
