#pragma once

#include <iosfwd>

#include "majorcat/error.hpp"

namespace majorcat {

/// Exit statuses of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitInputError = 2,
  kExitPrecondition = 3,
  kExitBudget = 4,
};

int exit_code_for(ErrorCode code);

/// Entry point of the `majorcat` tool. Data goes to `out`, diagnostics to `err`.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace majorcat
