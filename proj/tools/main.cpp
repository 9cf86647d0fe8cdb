#include <iostream>
#include <string>
#include <vector>

#include "wronoc/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return wronoc::run_cli(args, std::cout, std::cerr);
}
