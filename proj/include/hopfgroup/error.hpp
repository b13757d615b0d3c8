#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hopfgroup {

enum class ErrorCode {
  Usage,
  Parse,
  Elem,
  Level,
  Unsupported,
  DivisionByZero,
  Validation,
  Leakage,
  Conductor,
  Range,
  Io,
};

std::string_view error_code_name(ErrorCode code);

/// Every failure raised by the library. The code is stable and is what the
/// CLI reports; the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace hopfgroup
