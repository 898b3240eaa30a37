#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace circjoin::cli {

/// Process exit codes.
enum ExitCode : int {
    kSuccess = 0,
    kFailure = 1,
    kParseError = 2,
    kPreconditionError = 3,
    kNumericalError = 4,
};

/// Runs the command line `args` (without the program name). Documents named
/// "-" or omitted are read from `in`.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

} // namespace circjoin::cli
