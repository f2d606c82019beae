#pragma once

#include <ostream>

namespace wbnet::app {

/// Exit codes of every command.
enum ExitCode : int { kOk = 0, kVerdictFailure = 1, kInputError = 2 };

/// Entry point of the command-line tool. Writes reports to `out` (or the
/// --out file) and diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace wbnet::app
