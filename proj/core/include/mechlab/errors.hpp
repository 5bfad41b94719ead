#pragma once

#include <stdexcept>
#include <string>

namespace mechlab {

enum class ErrorCode {
  kEmptyGroup,
  kTooFewGroups,
  kTooFewFacilities,
  kNonFinitePosition,
  kSizeOverflow,
  kInfeasibleSolution,
  kZeroOptimumMismatch,
  kRankOutOfRange,
  kInvalidParamPair,
  kEnumerationTooLarge,
  kNoFeasibleFill,
  kInvalidFamilyParams,
  kParseError,
  kUsageError,
  kInternal,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

}  // namespace mechlab
