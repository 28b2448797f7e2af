#pragma once

#include <stdexcept>
#include <string>

namespace harmonic {

/// Failure categories raised by the library. Every thrown harmonic::Error
/// carries exactly one of these so callers can branch without parsing text.
enum class ErrorCode {
  InvalidInput,
  NonConvergence,
  Indeterminate,
  NotIsolated,
  AtSingularity,
  DegenerateAnalyticPart,
  IndeterminateIndex,
  DegenerateDilatation,
  HitBranchPoint,
  MaxSteps,
  UnbalancedVertex,
  SingularSample,
  TooClose,
  TangentialCrossing,
  MultipleCrossings,
  OnCurve,
  NonInteger,
  EtaOnCaustic,
  DegenerateMap,
  EtaOnBoundaryImage,
  EtaTooSmall,
  SingularJacobian,
  CountMismatch,
  NotAFold,
  DegenerateA1,
  NotACusp,
  DegenerateCtilde,
  CoincidentPoints,
  PathBlocked,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace harmonic
