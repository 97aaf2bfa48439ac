#ifndef DRAZIN_CLI_HPP
#define DRAZIN_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace drazin::cli {

enum ExitCode : int {
    kSuccess = 0,
    kMismatch = 1,            // hypotheses held but formula != oracle
    kConditionsNotMet = 2,    // verify on an instance violating the hypotheses
    kInputError = 3,          // unreadable/malformed input, bad shapes, unknown tokens
    kGenerationExhausted = 4, // fuzz produced no instance for some formula
};

/// Runs one command line (without the program name). JSON reports go to
/// `out`, human-readable summaries and diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace drazin::cli

#endif  // DRAZIN_CLI_HPP
