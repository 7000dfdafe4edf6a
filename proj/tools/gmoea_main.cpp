#include <iostream>
#include <string>
#include <vector>

#include "gmoea/harness.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return gmoea::cli_run(args, std::cout, std::cerr);
}
