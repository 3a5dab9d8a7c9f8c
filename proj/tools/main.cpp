#include <iostream>

#include "qfm/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return qfm::cli::run(args, std::cout, std::cerr);
}
