#include <iostream>
#include <string>
#include <vector>

#include "ucg/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return ucg::cli::run(args, std::cout, std::cerr).exit_code;
}
