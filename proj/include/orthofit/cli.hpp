#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace orthofit::cli {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kOk = 0,
  kUsage = 2,    ///< bad flags, unreadable or malformed input
  kData = 3,     ///< data or model error
  kNumeric = 4,  ///< numeric failure
};

/// Runs one command. args excludes the program name; regular output goes to
/// out and diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Parses "lo:hi:step" or a comma-separated list. Throws InputError.
std::vector<double> parse_grid(const std::string& spec);

}  // namespace orthofit::cli
