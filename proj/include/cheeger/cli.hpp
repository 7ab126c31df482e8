#pragma once

#include <ostream>

namespace cheeger {

// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitCheckFailed = 2;
inline constexpr int kExitUsage = 64;

// Subcommands: convex, grid, strip, rof, example, verify. The report goes to
// `out` unless --json is given; diagnostics and usage go to `err`.
int run_command(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cheeger
