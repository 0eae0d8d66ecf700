#pragma once

#include <stdexcept>
#include <string>

namespace biodilate {

enum class ErrorCode {
  DimensionMismatch,
  Defective,
  NoConvergence,
  NotPsd,
  NotHermitian,
  ZeroVector,
  BiorthogonalityViolation,
  NonPositiveKappa,
  SingularWithModulusPolicy,
  ExplicitKappaInvalid,
  ReconstructionFailure,
  NonUnitaryGate,
  IndexOutOfRange,
  ValueOutOfRange,
  UnnormalizedTarget,
  ZeroProbabilityBranch,
  NonUnitaryRepresentation,
  NotPowerOfTwoDim,
  NonUnitarySummand,
  NotAContraction,
  ParseError,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void throw_error(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace biodilate
