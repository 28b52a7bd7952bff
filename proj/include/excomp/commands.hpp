#pragma once

// CLI entry point shared by the binary and the end-to-end tests.

#include <string>
#include <vector>

namespace excomp::commands {

// Full command line including the program name. Returns the process exit
// code: 0 success, 1 configuration problems, 2 truncated-basis or accuracy
// failures, 3 forbidden spectral zones, 4 failed property verification.
int run_cli(const std::vector<std::string>& args);

int run_cli(int argc, char** argv);

}  // namespace excomp::commands
