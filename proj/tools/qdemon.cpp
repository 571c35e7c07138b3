#include <iostream>
#include <string>
#include <vector>

#include "qdemon/cli/commands.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return qdemon::cli::run_cli(args, std::cout, std::cerr);
}
