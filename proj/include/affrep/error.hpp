#pragma once
#include <stdexcept>
#include <string>

namespace affrep {

enum class ErrorCode {
  ZeroConstantTerm,
  ZeroEvaluationPoint,
  WindowMiss,
  DimensionMismatch,
  NotDiagonalizable,
  NotSimple,
  RepeatedPoint,
  PreconditionViolation,
  NotMultiplicityFree,
  DepthTooSmall,
  WindowExhausted,
  WindowUnderflow,
  NotAHomomorphism,
  ParseError,
};

const char* error_name(ErrorCode c);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode c, const std::string& what)
      : std::runtime_error(std::string(error_name(c)) + ": " + what), code_(c) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace affrep
