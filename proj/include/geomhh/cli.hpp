#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace geomhh::cli {

// Exit codes: 0 all checks passed, 1 at least one inequality violation,
// 2 usage/parse error, 3 numerical failure (non-convergence, domain error).
constexpr int kExitPass = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

// Dispatches one invocation. `args` excludes the program name.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace geomhh::cli
