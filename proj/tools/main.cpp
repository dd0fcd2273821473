#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "pathweave/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  const auto level = pathweave::cli::parse_log_level(std::getenv("PATHWEAVE_LOG"));
  return pathweave::cli::run(args, std::cout, std::cerr, level);
}
