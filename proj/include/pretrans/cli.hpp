#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pretrans::cli {

/// Exit statuses of the command-line tool.
enum Exit : int { kOk = 0, kNegative = 1, kUsage = 2 };

/// Runs one command. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pretrans::cli
