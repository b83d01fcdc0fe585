#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace contractible {

enum class ErrorCode {
  DuplicateId,
  DanglingEndpoint,
  ZeroMultiplicity,
  EmptyCycle,
  InvalidRayTarget,
  InvalidRayEdge,
  UnknownVertex,
  TNotAcyclic,
  ConditionsFailed,
  BvInfinite,
  BvEmpty,
  Nonterminating,
  StuckAtSingularity,
  TooLarge,
  HasTails,
  StageMismatch,
  InfiniteDegree,
  NotBipartite,
  HasSinks,
  NotRowFinite,
  HasRays,
  Unsupported,
  Unrepresentable,
  ParseError,
  GenerationExhausted,
  InvalidArgument,
};

std::string_view error_name(ErrorCode code) noexcept;

// Every library failure is reported through this type; the code is the
// machine-readable part and what() names the offending element.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace contractible
