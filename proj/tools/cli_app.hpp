#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mwht::cli {

// Runs the command line `args` (program name excluded). Returns the process exit code:
// 0 success, 2 invalid input, 3 numerical failure, 4 I/O failure.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mwht::cli
