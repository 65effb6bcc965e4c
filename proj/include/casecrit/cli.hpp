#ifndef CASECRIT_CLI_HPP_
#define CASECRIT_CLI_HPP_

#include <ostream>
#include <string>
#include <vector>

namespace casecrit {

inline constexpr const char* kToolVersion = "0.1.0";

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitData = 2,
  kExitNumerical = 3,
};

// Entry point for the casecrit command line. args[0] is the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace casecrit

#endif  // CASECRIT_CLI_HPP_
