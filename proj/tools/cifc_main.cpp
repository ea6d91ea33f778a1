#include <iostream>
#include <string>
#include <vector>

#include "cifc/cli/commands.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return cifc::cli::run(args, std::cerr);
}
