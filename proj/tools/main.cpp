#include <iostream>
#include <vector>

#include "stimg/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return stimg::cli::run(args, std::cout, std::cerr);
}
