#include <iostream>
#include <string>
#include <vector>

#include "k3lat_cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return k3lat::cli::run(args, std::cin, std::cout, std::cerr);
}
