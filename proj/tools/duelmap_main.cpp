#include <iostream>
#include <string>
#include <vector>

#include "duelmap/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return duelmap::run_cli(args, std::cout, std::cerr);
}
