#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace atlstit {

/// Exit codes of the command-line tool.
enum ExitCode : int { kExitOk = 0, kExitFalse = 1, kExitInput = 2 };

/// Runs the tool on `args` (without the program name). Never throws.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace atlstit
