#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace symquot::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kDataError = 2, kVerificationFailed = 3 };

/// Runs the command line `args` (args[0] is the program name). "-" as a file
/// name, and the default for --input/--output, means `in` / `out`.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace symquot::cli
