#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace carpet {

enum class ErrorCode {
  BaseTooSmall,
  NotProperSubset,
  TooFewMaps,
  DigitOutOfRange,
  DuplicatePair,
  InadmissiblePair,
  NotInAttractor,
  IrrationalInput,
  NotCanonical,
  NonPeriodicInput,
  EmptyCandidateSet,
  UndecidableDominance,
  UndecidableTie,
  FiniteTruncationOnly,
  DegenerateExpansion,
  InvalidSchedule,
  InvalidRates,
  NotAProbability,
  FrequenciesDoNotExist,
  InsufficientDepth,
  EmptyMn,
  ThresholdNotMet,
  EnumerationTooLarge,
  BadBreakPoints,
  DepthTooLarge,
  RadiusTooSmall,
  RadiusOutOfRange,
  ConfigError,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace carpet
