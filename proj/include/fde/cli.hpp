#pragma once

#include <string>
#include <vector>

namespace fde::cli {

// Full command-line entry point, arguments without the program name.
// Returns the process exit code: 0 success, 1 solver or check failure,
// 2 invalid flags.
int run(const std::vector<std::string>& args);

} // namespace fde::cli
