#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace slspec {

// Exit codes of the command-line front end.
enum ExitCode : int {
    kExitOk = 0,
    kExitBadInput = 2,      // malformed flags or files, InvalidInput, InterlacingViolation
    kExitSolver = 3,        // any other solver failure
    kExitNoConvergence = 4  // Newton inversion did not converge
};

// Runs `slspec <args...>` (args excludes the program name).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace slspec
