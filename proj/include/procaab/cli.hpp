#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace procaab::cli {

/// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kFailure = 1;      ///< numerical non-convergence, I/O
inline constexpr int kConfigError = 2;  ///< bad flags or config
inline constexpr int kDomainError = 3;  ///< validity window, unreachable bound

/// Subcommands: convert, field, phase, bound, deflect, sweep, refs.
/// Data goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace procaab::cli
