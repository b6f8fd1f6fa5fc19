#include "majorcat/error.hpp"

namespace majorcat {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::NegativeEntry: return "NegativeEntry";
    case ErrorCode::BadNormalization: return "BadNormalization";
    case ErrorCode::MixedMode: return "MixedMode";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::DimensionTooSmall: return "DimensionTooSmall";
    case ErrorCode::NotIncomparable: return "NotIncomparable";
    case ErrorCode::EpsilonTooLarge: return "EpsilonTooLarge";
    case ErrorCode::ExactModeUnsupported: return "ExactModeUnsupported";
    case ErrorCode::RankMismatch: return "RankMismatch";
    case ErrorCode::PreconditionFailed: return "PreconditionFailed";
    case ErrorCode::RejectionBudgetExhausted: return "RejectionBudgetExhausted";
    case ErrorCode::ConfigInvalid: return "ConfigInvalid";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

void fail(ErrorCode code, const std::string& detail) { throw Error(code, detail); }

}  // namespace majorcat
