#include "courant/error.hpp"

namespace courant {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::DegeneratePairing: return "DegeneratePairing";
    case ErrorCode::DegenerateRestriction: return "DegenerateRestriction";
    case ErrorCode::NotGeneralizedMetric: return "NotGeneralizedMetric";
    case ErrorCode::NonIsotropicSplitting: return "NonIsotropicSplitting";
    case ErrorCode::NotAGraph: return "NotAGraph";
    case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::PositivityLost: return "PositivityLost";
    case ErrorCode::EvaluationOutsideDomain: return "EvaluationOutsideDomain";
    case ErrorCode::NotCompatible: return "NotCompatible";
    case ErrorCode::AnchorNotBijective: return "AnchorNotBijective";
    case ErrorCode::ShiftNotBlockDiagonal: return "ShiftNotBlockDiagonal";
    case ErrorCode::ShiftNotAntisymmetric: return "ShiftNotAntisymmetric";
    case ErrorCode::ShiftNotMinusValued: return "ShiftNotMinusValued";
    case ErrorCode::NotInvariant: return "NotInvariant";
    case ErrorCode::StepRejected: return "StepRejected";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ConfigInvalid: return "ConfigInvalid";
  }
  return "Unknown";
}

}  // namespace courant
