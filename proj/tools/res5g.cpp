#include <iostream>
#include <string>
#include <vector>

#include "res5g/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return res5g::run_cli(args, std::cout, std::cerr);
}
