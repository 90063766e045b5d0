#ifndef TCSP_TOOLS_CLI_HPP
#define TCSP_TOOLS_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace tcsp::cli {

enum ExitCode : int {
  kSat = 0,
  kUnsat = 1,
  kInputError = 2,
  kNpHard = 3,
};

/// Runs `tcsp <args...>`; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tcsp::cli

#endif  // TCSP_TOOLS_CLI_HPP
