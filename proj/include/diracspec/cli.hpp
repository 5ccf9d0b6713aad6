#ifndef DIRACSPEC_CLI_HPP
#define DIRACSPEC_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace diracspec::cli {

// Runs one CLI invocation. Reports go to `out` (or --out <path>), messages
// to `err`. Exit status: 0 ok, 2 validation error, 3 numerical failure.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace diracspec::cli

#endif
