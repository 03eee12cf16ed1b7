#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace jarcon {

enum class ErrorCode {
  validation,
  not_found,
  insufficient_data,
  degenerate_table,
  undefined_se,
  collinearity,
  range,
  conflict,
  io,
};

std::string_view to_string(ErrorCode code) noexcept;

// Every failure surfaced by the library carries a machine-readable code so
// the CLI and the HTTP layer can map it to exit codes / status codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace jarcon
