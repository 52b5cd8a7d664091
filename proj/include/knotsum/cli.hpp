#pragma once

#include <iosfwd>

namespace knotsum {

enum ExitCode : int { kExitOk = 0, kExitDomain = 1, kExitUsage = 2 };

// Entry point of the knotsum tool. Results go to `out`, diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace knotsum
