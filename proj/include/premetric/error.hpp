#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace premetric {

enum class ErrorCode {
  ConflictingComponent,
  SingularOperator,
  ComplexUnsupported,
  SingularJacobian,
  Degenerate,
  NonPositiveParameter,
  DegeneratePolynomial,
  ZeroCovector,
  NotSkewonFree,
  Impossible,
  PreconditionFailed,
  RelationViolated,
  NumericallyDegenerate,
  NotRepresentable,
  VariableMismatch,
  EmptyIdeal,
  Timeout,
  ParseError,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ConflictingComponent: return "ConflictingComponent";
    case ErrorCode::SingularOperator: return "SingularOperator";
    case ErrorCode::ComplexUnsupported: return "ComplexUnsupported";
    case ErrorCode::SingularJacobian: return "SingularJacobian";
    case ErrorCode::Degenerate: return "Degenerate";
    case ErrorCode::NonPositiveParameter: return "NonPositiveParameter";
    case ErrorCode::DegeneratePolynomial: return "DegeneratePolynomial";
    case ErrorCode::ZeroCovector: return "ZeroCovector";
    case ErrorCode::NotSkewonFree: return "NotSkewonFree";
    case ErrorCode::Impossible: return "Impossible";
    case ErrorCode::PreconditionFailed: return "PreconditionFailed";
    case ErrorCode::RelationViolated: return "RelationViolated";
    case ErrorCode::NumericallyDegenerate: return "NumericallyDegenerate";
    case ErrorCode::NotRepresentable: return "NotRepresentable";
    case ErrorCode::VariableMismatch: return "VariableMismatch";
    case ErrorCode::EmptyIdeal: return "EmptyIdeal";
    case ErrorCode::Timeout: return "Timeout";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// Domain error raised by every module. The code is stable and is what the
/// CLI reports in its structured error object.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace premetric
