#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nclp::cli {

/// Exit codes of the command-line tool.
enum ExitCode : int { kComputed = 0, kNegative = 1, kUndetermined = 2, kInputError = 3 };

/// Runs one command. `args` excludes the program name; instances are read
/// from the file named by the positional argument or from `in`.
int run_command(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace nclp::cli
