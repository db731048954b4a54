#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace spmfdp {

enum class ErrorCode {
  kInvalidInput,
  kParse,
  kNotDivisible,
  kNonSquare,
  kDegenerateSystem,
  kAmbiguousKernel,
  kNotUnit,
  kNotEven,
  kWrongDegree,
  kCrossCheckMismatch,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidInput: return "InvalidInput";
    case ErrorCode::kParse: return "ParseError";
    case ErrorCode::kNotDivisible: return "NotDivisible";
    case ErrorCode::kNonSquare: return "NonSquare";
    case ErrorCode::kDegenerateSystem: return "DegenerateSystem";
    case ErrorCode::kAmbiguousKernel: return "AmbiguousKernel";
    case ErrorCode::kNotUnit: return "NotUnit";
    case ErrorCode::kNotEven: return "NotEven";
    case ErrorCode::kWrongDegree: return "WrongDegree";
    case ErrorCode::kCrossCheckMismatch: return "CrossCheckMismatch";
  }
  return "Unknown";
}

/// Every failure raised by the library carries a machine-readable code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace spmfdp
