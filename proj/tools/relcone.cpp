#include <iostream>

#include "relcone/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return relcone::cli::run(args, std::cout, std::cerr);
}
