#include <iostream>
#include <vector>

#include "smallcancel/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return smallcancel::run_cli(args, std::cout);
}
