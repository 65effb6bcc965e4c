#include <iostream>
#include <string>
#include <vector>

#include "casecrit/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return casecrit::run_cli(args, std::cout, std::cerr);
}
