#include <iostream>
#include <string>
#include <vector>

#include "moral/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return moral::cli::dispatch(args, std::cout, std::cerr);
}
