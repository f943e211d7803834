#include <iostream>
#include <string>
#include <vector>

#include "netfuncap/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return netfuncap::run(args, std::cout, std::cerr);
}
