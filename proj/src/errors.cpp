#include "biodilate/errors.hpp"

namespace biodilate {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::Defective: return "Defective";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::NotPsd: return "NotPSD";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::BiorthogonalityViolation: return "BiorthogonalityViolation";
    case ErrorCode::NonPositiveKappa: return "NonPositiveKappa";
    case ErrorCode::SingularWithModulusPolicy: return "SingularWithModulusPolicy";
    case ErrorCode::ExplicitKappaInvalid: return "ExplicitKappaInvalid";
    case ErrorCode::ReconstructionFailure: return "ReconstructionFailure";
    case ErrorCode::NonUnitaryGate: return "NonUnitaryGate";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::ValueOutOfRange: return "ValueOutOfRange";
    case ErrorCode::UnnormalizedTarget: return "UnnormalizedTarget";
    case ErrorCode::ZeroProbabilityBranch: return "ZeroProbabilityBranch";
    case ErrorCode::NonUnitaryRepresentation: return "NonUnitaryRepresentation";
    case ErrorCode::NotPowerOfTwoDim: return "NotPowerOfTwoDim";
    case ErrorCode::NonUnitarySummand: return "NonUnitarySummand";
    case ErrorCode::NotAContraction: return "NotAContraction";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "UnknownError";
}

}  // namespace biodilate
