#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace srp {

// Entry point shared by the srp binary and the tests: argv-style arguments
// without the program name. Results go to `out`, diagnostics and progress to
// `err`. Returns the process exit code (0 on success).
int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace srp
