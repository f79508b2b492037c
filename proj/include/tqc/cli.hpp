#pragma once

// Command-line surface: gamma, charnum, potential, verify.

#include <iosfwd>
#include <string>
#include <vector>

namespace tqc::cli {

enum ExitCode : int {
    exit_ok = 0,
    exit_verification_failed = 1,
    exit_invalid_input = 2,
    exit_dimension = 3,
    exit_unsupported_key = 4,
};

/// Runs one command.  `args` excludes the program name.  Data goes to `out`
/// (or the --output file), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tqc::cli
