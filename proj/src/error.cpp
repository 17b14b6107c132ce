#include "carpet/error.hpp"

namespace carpet {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::BaseTooSmall: return "BaseTooSmall";
    case ErrorCode::NotProperSubset: return "NotProperSubset";
    case ErrorCode::TooFewMaps: return "TooFewMaps";
    case ErrorCode::DigitOutOfRange: return "DigitOutOfRange";
    case ErrorCode::DuplicatePair: return "DuplicatePair";
    case ErrorCode::InadmissiblePair: return "InadmissiblePair";
    case ErrorCode::NotInAttractor: return "NotInAttractor";
    case ErrorCode::IrrationalInput: return "IrrationalInput";
    case ErrorCode::NotCanonical: return "NotCanonical";
    case ErrorCode::NonPeriodicInput: return "NonPeriodicInput";
    case ErrorCode::EmptyCandidateSet: return "EmptyCandidateSet";
    case ErrorCode::UndecidableDominance: return "UndecidableDominance";
    case ErrorCode::UndecidableTie: return "UndecidableTie";
    case ErrorCode::FiniteTruncationOnly: return "FiniteTruncationOnly";
    case ErrorCode::DegenerateExpansion: return "DegenerateExpansion";
    case ErrorCode::InvalidSchedule: return "InvalidSchedule";
    case ErrorCode::InvalidRates: return "InvalidRates";
    case ErrorCode::NotAProbability: return "NotAProbability";
    case ErrorCode::FrequenciesDoNotExist: return "FrequenciesDoNotExist";
    case ErrorCode::InsufficientDepth: return "InsufficientDepth";
    case ErrorCode::EmptyMn: return "EmptyMn";
    case ErrorCode::ThresholdNotMet: return "ThresholdNotMet";
    case ErrorCode::EnumerationTooLarge: return "EnumerationTooLarge";
    case ErrorCode::BadBreakPoints: return "BadBreakPoints";
    case ErrorCode::DepthTooLarge: return "DepthTooLarge";
    case ErrorCode::RadiusTooSmall: return "RadiusTooSmall";
    case ErrorCode::RadiusOutOfRange: return "RadiusOutOfRange";
    case ErrorCode::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace carpet
