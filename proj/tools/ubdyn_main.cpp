#include <iostream>
#include <string>
#include <vector>

#include "ubdyn/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return ubdyn::run(args, std::cout, std::cerr);
}
