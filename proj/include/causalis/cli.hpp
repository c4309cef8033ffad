#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace causalis::cli {

/// Dispatches one command line (without the program name). Exit codes:
/// 0 for definite verdicts (including "false" and empty enumerations),
/// 2 for usage, parse and input errors, 3 for an exhausted search budget.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace causalis::cli
