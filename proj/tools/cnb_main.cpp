#include <iostream>
#include <string>
#include <vector>

#include "cnb/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return cnb::run_cli(args, std::cout, std::cerr);
}
