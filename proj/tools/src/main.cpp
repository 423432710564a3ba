#include <cstdlib>
#include <iostream>

#include "rschain/cli/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return rschain::cli::run(args, std::cout, std::cerr, std::getenv("RS_CHAIN_TOL"));
}
