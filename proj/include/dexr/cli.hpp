#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dexr::cli {

/// Exit codes shared by every subcommand.
enum ExitCode : int {
  kPositive = 0,
  kNegative = 1,
  kUnknown = 2,
  kUsage = 3,
};

/// Runs one command line (without the program name). Reports go to `out`,
/// diagnostics to `err`; in JSON mode errors are reported on `out` as well.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dexr::cli
