#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace majorcat {

enum class ErrorCode {
  EmptyInput,
  NegativeEntry,
  BadNormalization,
  MixedMode,
  ParseError,
  IndexOutOfRange,
  DimensionTooSmall,
  NotIncomparable,
  EpsilonTooLarge,
  ExactModeUnsupported,
  RankMismatch,
  PreconditionFailed,
  RejectionBudgetExhausted,
  ConfigInvalid,
};

std::string_view to_string(ErrorCode code);

/// Every recoverable failure in the library is reported through this type;
/// `code()` lets the CLI map it onto an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& detail);

}  // namespace majorcat
