#pragma once

#include <stdexcept>
#include <string>

namespace tropab {

enum class ErrorCode {
  NotSkew,
  Degenerate,
  NotInjective,
  NotInGLXY,
  NotUnimodular,
  NotPositiveDefinite,
  WindowTooSmall,
  InvalidPaving,
  NonMatchingFaces,
  RankMismatch,
  NotQuasiperiodic,
  NotSimplicial,
  MissingVertexValue,
  NotConvex,
  Unbounded,
  OutsideSupport,
  InconsistentData,
  NotInvariant,
  NotAFace,
  NotSymplectic,
  NearSingularDenominator,
  IllConditionedBlock,
  BadModulus,
  BadLift,
  TooLarge,
  BadTwistPair,
  EmptyComponent,
  NotSharp,
};

const char* error_name(ErrorCode code);

// Domain error: the input is well formed but violates a mathematical precondition.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::string field = {})
      : std::runtime_error(message), code_(code), field_(std::move(field)) {}

  ErrorCode code() const { return code_; }
  const std::string& field() const { return field_; }

 private:
  ErrorCode code_;
  std::string field_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message, std::string field = {}) {
  throw Error(code, message, std::move(field));
}

}  // namespace tropab
