#include "contractible/error.hpp"

namespace contractible {

std::string_view error_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::DuplicateId: return "DUPLICATE_ID";
    case ErrorCode::DanglingEndpoint: return "DANGLING_ENDPOINT";
    case ErrorCode::ZeroMultiplicity: return "ZERO_MULTIPLICITY";
    case ErrorCode::EmptyCycle: return "EMPTY_CYCLE";
    case ErrorCode::InvalidRayTarget: return "INVALID_RAY_TARGET";
    case ErrorCode::InvalidRayEdge: return "INVALID_RAY_EDGE";
    case ErrorCode::UnknownVertex: return "UNKNOWN_VERTEX";
    case ErrorCode::TNotAcyclic: return "T_NOT_ACYCLIC";
    case ErrorCode::ConditionsFailed: return "CONDITIONS_FAILED";
    case ErrorCode::BvInfinite: return "BV_INFINITE";
    case ErrorCode::BvEmpty: return "BV_EMPTY";
    case ErrorCode::Nonterminating: return "NONTERMINATING";
    case ErrorCode::StuckAtSingularity: return "STUCK_AT_SINGULARITY";
    case ErrorCode::TooLarge: return "TOO_LARGE";
    case ErrorCode::HasTails: return "HAS_TAILS";
    case ErrorCode::StageMismatch: return "STAGE_MISMATCH";
    case ErrorCode::InfiniteDegree: return "INFINITE_DEGREE";
    case ErrorCode::NotBipartite: return "NOT_BIPARTITE";
    case ErrorCode::HasSinks: return "HAS_SINKS";
    case ErrorCode::NotRowFinite: return "NOT_ROW_FINITE";
    case ErrorCode::HasRays: return "HAS_RAYS";
    case ErrorCode::Unsupported: return "UNSUPPORTED";
    case ErrorCode::Unrepresentable: return "UNREPRESENTABLE";
    case ErrorCode::ParseError: return "PARSE_ERROR";
    case ErrorCode::GenerationExhausted: return "GENERATION_EXHAUSTED";
    case ErrorCode::InvalidArgument: return "INVALID_ARGUMENT";
  }
  return "UNKNOWN";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(error_name(code)) + ": " + message), code_(code) {}

}  // namespace contractible
