#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace trackcop {

enum class ErrorCode {
  MalformedKnots,
  OutOfDomain,
  NotStrictlyIncreasing,
  EndpointViolation,
  DiagonalConditionViolated,
  PsiNotAnchored,
  NoCopulaExists,
  SpecMismatch,
  IneligiblePsi,
  BadMesh,
  MeshMismatch,
  NotACopula,
  TrackSectionMismatch,
  IneligibleExtractedPsi,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Raised by make_diagonal. `condition` is one of 'a', 'b', 'c', 'd' matching
/// the four admissibility conditions of a track diagonal.
class DiagonalConditionError : public Error {
 public:
  DiagonalConditionError(char condition, double where, const std::string& what)
      : Error(ErrorCode::DiagonalConditionViolated, what), condition_(condition), where_(where) {}

  char condition() const noexcept { return condition_; }
  double where() const noexcept { return where_; }

 private:
  char condition_;
  double where_;
};

}  // namespace trackcop
