#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gwloc::cli {

enum ExitCode : int {
    kOk = 0,
    kInvalidArguments = 2,
    kDegenerateWeights = 3,
    kIntegralityViolation = 4,
};

/// Environment variable holding the default worker count.
inline constexpr const char* kJobsEnv = "GWLOC_JOBS";

/// Runs one command line (args[0] is the program name). Reports go to `out`,
/// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gwloc::cli
