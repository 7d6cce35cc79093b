#include <iostream>

#include "crpoly_cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return crpoly::cli::run(args, std::cout, std::cerr);
}
