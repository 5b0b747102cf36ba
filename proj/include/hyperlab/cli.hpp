#pragma once

#include <ostream>

namespace hyperlab {

/// Exit codes of the command-line front end.
enum ExitCode : int { kExitOk = 0, kExitFailure = 1, kExitUsage = 2 };

/// Runs `catalan-hyperlab <eval|verify|catalog> ...` with argv[0] being
/// the program name. Output is assembled first and written once.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hyperlab
