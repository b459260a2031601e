#pragma once

#include <string>
#include <vector>

namespace finsec {

// Entry point shared by the binary and the tests. `args` excludes the
// program name. Returns the process exit code.
int run_cli(const std::vector<std::string>& args);

// Exit codes, one per error category.
enum ExitCode : int {
    kExitOk = 0,
    kExitVerifyFailed = 1,
    kExitConfig = 2,
    kExitDimension = 3,
    kExitRankDeficient = 4,
    kExitNonFinite = 5,
    kExitIndex = 6,
    kExitInverse = 7,
    kExitMinors = 8,
    kExitOther = 9,
};

} // namespace finsec
