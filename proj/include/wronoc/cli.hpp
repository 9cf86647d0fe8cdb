#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace wronoc {

// Process exit codes of the command-line front end.
enum ExitCode : int {
  kExitOk = 0,
  kExitInfeasible = 1,
  kExitUsage = 2,      // bad flags, missing files, malformed instances
  kExitTimeout = 3,    // time limit hit; best incumbent (if any) reported
  kExitInternal = 4,   // a solution failed the independent checker
};

// Runs one subcommand. `args` excludes the program name. JSON / CSV / text
// payloads go to `out` (or the --out file), diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wronoc
