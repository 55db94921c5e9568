#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tagforge {

// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitUsage = 2;

// Runs the tool on `args` (without the program name), writing results to
// `out` and diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tagforge
