#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace zpl {

enum class ErrorCode {
  DivisionByEnclosedZero,
  Overflow,
  PrecisionCeiling,
  PoleAtOne,
  DenominatorZero,
  ZeroOnBoundary,
  ZeroOnPath,
  ZeroAtEndpoint,
  CompletenessMismatch,
  CountMismatch,
  PreconditionViolation,
  InsufficientZeroWindow,
  BetaOnLine,
  IncompatibleCaches,
  ParseError,
  IoError,
};

constexpr std::string_view error_name(ErrorCode code)
{
  switch (code) {
    case ErrorCode::DivisionByEnclosedZero: return "DivisionByEnclosedZero";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::PrecisionCeiling: return "PrecisionCeiling";
    case ErrorCode::PoleAtOne: return "PoleAtOne";
    case ErrorCode::DenominatorZero: return "DenominatorZero";
    case ErrorCode::ZeroOnBoundary: return "ZeroOnBoundary";
    case ErrorCode::ZeroOnPath: return "ZeroOnPath";
    case ErrorCode::ZeroAtEndpoint: return "ZeroAtEndpoint";
    case ErrorCode::CompletenessMismatch: return "CompletenessMismatch";
    case ErrorCode::CountMismatch: return "CountMismatch";
    case ErrorCode::PreconditionViolation: return "PreconditionViolation";
    case ErrorCode::InsufficientZeroWindow: return "InsufficientZeroWindow";
    case ErrorCode::BetaOnLine: return "BetaOnLine";
    case ErrorCode::IncompatibleCaches: return "IncompatibleCaches";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries a structured code; the CLI
/// prints `error_name(code())` on stderr.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code)
  {
  }

  ErrorCode code() const noexcept { return code_; }
  std::string_view name() const noexcept { return error_name(code_); }

 private:
  ErrorCode code_;
};

}  // namespace zpl
