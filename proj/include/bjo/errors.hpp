#pragma once

#include <stdexcept>
#include <string>

namespace bjo {

enum class ErrorCode {
  NonSquare,
  NotHermitian,
  ShapeMismatch,
  ZeroOperator,
  RealFieldUnsupported,
  IterationBudgetExceeded,
  DykstraStalled,
  WitnessValidationFailed,
  SingularA,
  StateDegenerate,
  ZeroColumn,
  NotUnit,
  ParseError,
};

inline const char* to_string(ErrorCode c) {
  switch (c) {
    case ErrorCode::NonSquare: return "NonSquare";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::ZeroOperator: return "ZeroOperator";
    case ErrorCode::RealFieldUnsupported: return "RealFieldUnsupported";
    case ErrorCode::IterationBudgetExceeded: return "IterationBudgetExceeded";
    case ErrorCode::DykstraStalled: return "DykstraStalled";
    case ErrorCode::WitnessValidationFailed: return "WitnessValidationFailed";
    case ErrorCode::SingularA: return "SingularA";
    case ErrorCode::StateDegenerate: return "StateDegenerate";
    case ErrorCode::ZeroColumn: return "ZeroColumn";
    case ErrorCode::NotUnit: return "NotUnit";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace bjo
