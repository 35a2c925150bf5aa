#ifndef GEOFLOW_CLI_HPP
#define GEOFLOW_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace geoflow {

enum ExitStatus : int { kExitOk = 0, kExitValidation = 1, kExitInput = 2 };

/// Runs the command line (args excludes the program name). Returns the process exit status.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace geoflow

#endif  // GEOFLOW_CLI_HPP
