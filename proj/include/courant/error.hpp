#pragma once

#include <stdexcept>
#include <string>

namespace courant {

enum class ErrorCode {
  DegeneratePairing,
  DegenerateRestriction,
  NotGeneralizedMetric,
  NonIsotropicSplitting,
  NotAGraph,
  NotPositiveDefinite,
  PositivityLost,
  EvaluationOutsideDomain,
  NotCompatible,
  AnchorNotBijective,
  ShiftNotBlockDiagonal,
  ShiftNotAntisymmetric,
  ShiftNotMinusValued,
  NotInvariant,
  StepRejected,
  InvalidArgument,
  ConfigInvalid,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace courant
