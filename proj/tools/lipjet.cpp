#include <iostream>
#include <string>
#include <vector>

#include "lipjet/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return lipjet::cli::run(args, std::cout, std::cerr);
}
