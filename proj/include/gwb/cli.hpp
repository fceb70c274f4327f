#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace gwb::cli {

/// Process exit codes shared by every subcommand.
enum ExitCode : int {
  kOk = 0,
  kNegative = 1,  // obstruction found or a verification failed; report carries the witness
  kInputError = 2,
  kResourceLimit = 3,
  kInternalError = 4,
};

/// Runs one command line (without the program name). Reports go to `out`,
/// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gwb::cli
