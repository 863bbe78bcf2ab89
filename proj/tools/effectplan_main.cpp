#include <iostream>
#include <string>
#include <vector>

#include "effectplan/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return effectplan::run_cli(args, std::cout, std::cerr);
}
