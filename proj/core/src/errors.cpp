#include "mechlab/errors.hpp"

namespace mechlab {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kEmptyGroup: return "EmptyGroup";
    case ErrorCode::kTooFewGroups: return "TooFewGroups";
    case ErrorCode::kTooFewFacilities: return "TooFewFacilities";
    case ErrorCode::kNonFinitePosition: return "NonFinitePosition";
    case ErrorCode::kSizeOverflow: return "SizeOverflow";
    case ErrorCode::kInfeasibleSolution: return "InfeasibleSolution";
    case ErrorCode::kZeroOptimumMismatch: return "ZeroOptimumMismatch";
    case ErrorCode::kRankOutOfRange: return "RankOutOfRange";
    case ErrorCode::kInvalidParamPair: return "InvalidParamPair";
    case ErrorCode::kEnumerationTooLarge: return "EnumerationTooLarge";
    case ErrorCode::kNoFeasibleFill: return "NoFeasibleFill";
    case ErrorCode::kInvalidFamilyParams: return "InvalidFamilyParams";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kUsageError: return "UsageError";
    case ErrorCode::kInternal: return "Internal";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
      code_(code) {}

void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace mechlab
