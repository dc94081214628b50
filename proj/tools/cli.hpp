#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace eis::cli {

inline constexpr const char* kToolName = "eisenstein";
inline constexpr const char* kVersion = "0.1.0";

enum ExitCode : int { kOk = 0, kUsage = 1, kTolerance = 2 };

/// Runs one subcommand. args excludes the program name. Reports go to
/// --out when given, otherwise to `out`; diagnostics and timings to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace eis::cli
