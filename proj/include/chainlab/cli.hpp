#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace chainlab::cli {

enum ExitCode : int { Pass = 0, ToleranceFailure = 1, UsageError = 2 };

/// Runs the command line (without the program name). Subcommands:
///   scenario NAME   named self-checking run
///   list            registered scenarios with their anchors
///   spectrum LIT    symbol curve of a Laurent operator literal
///   simulate FILE   generic run from a key = value config
/// Output files go to --out (default "out").
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace chainlab::cli
