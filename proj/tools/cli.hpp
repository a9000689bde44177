#pragma once

#include <iosfwd>

namespace fracspec::cli {

enum ExitCode : int { Ok = 0, Usage = 1, Numerical = 2, VerificationFailed = 3, NotApplicable = 4 };

/// Parses argv, runs one subcommand and returns its exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fracspec::cli
