#include <iostream>
#include <string>
#include <vector>

#include "mechlab/harness.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return mechlab::run_command(args, std::cout, std::cerr);
}
