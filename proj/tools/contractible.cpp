#include <iostream>
#include <string>
#include <vector>

#include "contractible/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return contractible::cli_dispatch(args, std::cout, std::cerr);
}
