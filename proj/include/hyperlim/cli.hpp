#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hyperlim::cli {

// Runs the command-line driver on `args` (argv without the program name).
// Returns the process exit code: 0 on success, 1 on evaluation failures or
// failed corpus cases, 2 on usage, parse or input errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hyperlim::cli
