#pragma once

// elsdensity command line.
//
//   cubic   exact-density | euler-product | local-test | global-test | empirical
//   quartic mc-density | local-test | empirical | sigma-infty
//   sieve   transversality
//
// Exit codes: 0 success, 2 argument error, 3 internal consistency failure.

#include <iosfwd>
#include <string>
#include <vector>

namespace els::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitConsistency = 3;

/// Runs one invocation; args excludes the program name. JSON goes to out unless
/// --out is given, diagnostics and progress go to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace els::cli
