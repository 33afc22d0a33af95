#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ceresa {

/// Exit codes of the `ceresa` binary.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitUnknown = 2;  // certify: no criterion applies
inline constexpr int kExitUsage = 64;

/// Parses `args` (without the program name) and dispatches to the owning
/// module. Output goes to `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ceresa
