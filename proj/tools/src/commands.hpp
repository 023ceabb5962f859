#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace trackcop::cli {

// Exit codes shared by all commands.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;        // no copula, ineligible psi, failed checks
inline constexpr int kExitBadInput = 2;      // unreadable or malformed input
inline constexpr int kExitIncomparable = 3;  // compare
inline constexpr int kExitDominance = 4;     // compare

/// Entry point behind main(); args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace trackcop::cli
