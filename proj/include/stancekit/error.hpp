#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace stancekit {

enum class ErrorCode {
  invalid_argument,
  parse,
  io,
  validation,
  missing_resource,
};

inline std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid_argument";
    case ErrorCode::parse: return "parse";
    case ErrorCode::io: return "io";
    case ErrorCode::validation: return "validation";
    case ErrorCode::missing_resource: return "missing_resource";
  }
  return "unknown";
}

/// Every failure raised by the library. The message never contains a newline,
/// so the CLI can print it as one machine-parseable line.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace stancekit
