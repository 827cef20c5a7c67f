#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace baen::cli {

enum ExitCode : int {
    kOk = 0,
    kUsageError = 2,
    kDataError = 3,
    kCheckFailed = 4,
};

/// Runs one command line (args[0] is the program name). Output and
/// diagnostics go to the given streams; the return value is the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace baen::cli
