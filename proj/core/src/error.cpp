#include "harmonic/error.hpp"

namespace harmonic {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::Indeterminate: return "Indeterminate";
    case ErrorCode::NotIsolated: return "NotIsolated";
    case ErrorCode::AtSingularity: return "AtSingularity";
    case ErrorCode::DegenerateAnalyticPart: return "DegenerateAnalyticPart";
    case ErrorCode::IndeterminateIndex: return "IndeterminateIndex";
    case ErrorCode::DegenerateDilatation: return "DegenerateDilatation";
    case ErrorCode::HitBranchPoint: return "HitBranchPoint";
    case ErrorCode::MaxSteps: return "MaxSteps";
    case ErrorCode::UnbalancedVertex: return "UnbalancedVertex";
    case ErrorCode::SingularSample: return "SingularSample";
    case ErrorCode::TooClose: return "TooClose";
    case ErrorCode::TangentialCrossing: return "TangentialCrossing";
    case ErrorCode::MultipleCrossings: return "MultipleCrossings";
    case ErrorCode::OnCurve: return "OnCurve";
    case ErrorCode::NonInteger: return "NonInteger";
    case ErrorCode::EtaOnCaustic: return "EtaOnCaustic";
    case ErrorCode::DegenerateMap: return "DegenerateMap";
    case ErrorCode::EtaOnBoundaryImage: return "EtaOnBoundaryImage";
    case ErrorCode::EtaTooSmall: return "EtaTooSmall";
    case ErrorCode::SingularJacobian: return "SingularJacobian";
    case ErrorCode::CountMismatch: return "CountMismatch";
    case ErrorCode::NotAFold: return "NotAFold";
    case ErrorCode::DegenerateA1: return "DegenerateA1";
    case ErrorCode::NotACusp: return "NotACusp";
    case ErrorCode::DegenerateCtilde: return "DegenerateCtilde";
    case ErrorCode::CoincidentPoints: return "CoincidentPoints";
    case ErrorCode::PathBlocked: return "PathBlocked";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace harmonic
