#pragma once

#include <iosfwd>

namespace lipext {

/// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitInputError = 2;

/// Parses argv and runs one subcommand. Artifacts go to the files named by
/// --output / --report when given, else to `out`; diagnostics go to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace lipext
