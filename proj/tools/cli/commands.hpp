#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tqd::cli {

/// Exit statuses of the front end.
enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 2,
  kExitNumeric = 3,
  kExitBoundary = 4,
};

/// Runs one command line (without the program name). Everything the
/// command prints goes to `out`/`err`; files named by flags are written.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tqd::cli
