#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace semiot::io {

/// Process exit codes shared by every subcommand.
enum ExitCode : int {
  kExitOk = 0,          ///< solver converged
  kExitBadInput = 1,    ///< malformed file, bad flag, violated precondition
  kExitNotConverged = 2 ///< honest solver failure (non-convergence, underflow)
};

/// Entry point of the `semiot` tool. `args` excludes the program name.
///
/// Subcommands: gen, solve, bench, cluster. Global flags --seed, --output
/// and --format may appear before or after the subcommand.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace semiot::io
