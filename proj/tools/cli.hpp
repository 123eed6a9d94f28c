#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nilmult::cli {

enum ExitCode : int {
    kSuccess = 0,
    kPreconditionFailure = 1,
    kResourceCap = 2,
    kMismatch = 3,
};

/// Runs the command line `args` (without the program name). Output goes to
/// `out`; errors are reported there too in JSON mode, else on `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nilmult::cli
