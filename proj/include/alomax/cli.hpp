#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace alomax::cli {

// Runs the command line tool in-process.  args excludes the program name.
// Returns the process exit code: 0 success, 2 invalid arguments or
// parameters, 1 numeric or convergence failure.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace alomax::cli
