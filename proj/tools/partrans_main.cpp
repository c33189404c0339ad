#include <iostream>
#include <string>
#include <vector>

#include "partrans/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return partrans::run_command(args, std::cout, std::cerr);
}
