#include "trackcop/errors.hpp"

namespace trackcop {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::MalformedKnots: return "MalformedKnots";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::NotStrictlyIncreasing: return "NotStrictlyIncreasing";
    case ErrorCode::EndpointViolation: return "EndpointViolation";
    case ErrorCode::DiagonalConditionViolated: return "DiagonalConditionViolated";
    case ErrorCode::PsiNotAnchored: return "PsiNotAnchored";
    case ErrorCode::NoCopulaExists: return "NoCopulaExists";
    case ErrorCode::SpecMismatch: return "SpecMismatch";
    case ErrorCode::IneligiblePsi: return "IneligiblePsi";
    case ErrorCode::BadMesh: return "BadMesh";
    case ErrorCode::MeshMismatch: return "MeshMismatch";
    case ErrorCode::NotACopula: return "NotACopula";
    case ErrorCode::TrackSectionMismatch: return "TrackSectionMismatch";
    case ErrorCode::IneligibleExtractedPsi: return "IneligibleExtractedPsi";
  }
  return "Unknown";
}

}  // namespace trackcop
