#pragma once

#include <iosfwd>
#include <span>
#include <string>

namespace rigidkit::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kDataError = 2,
  kDegenerate = 3,
};

/// Runs one CLI invocation. `args` excludes the program name. The JSON report
/// goes to `out` only on success; diagnostics and the summary go to `err`.
int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace rigidkit::cli
