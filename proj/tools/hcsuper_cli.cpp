#include <iostream>

#include "hcsuper/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return hcsuper::run_command(args, std::cout, std::cerr);
}
