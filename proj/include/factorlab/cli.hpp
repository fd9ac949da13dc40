#ifndef FACTORLAB_CLI_HPP
#define FACTORLAB_CLI_HPP

#include <iosfwd>

namespace factorlab::cli {

/// Exit codes: 0 success, 1 exhausted search or bound exceeded, 2 usage error.
enum ExitCode : int { kSuccess = 0, kNegative = 1, kUsage = 2 };

/// Entry point shared by the factorlab binary and the tests. Primary output
/// goes to `out` (or --out), diagnostics and errors to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace factorlab::cli

#endif  // FACTORLAB_CLI_HPP
