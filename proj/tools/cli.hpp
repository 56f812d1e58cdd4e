#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cgrg::cli {

/// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kFailure = 1,  ///< check failed (violations found, rate scan failed) or internal error
  kConfigError = 2,
  kRegimeError = 3,
  kIoError = 4,
  kUncodable = 5,
};

/// Runs one subcommand. argv[0] is the program name.
int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

}  // namespace cgrg::cli
