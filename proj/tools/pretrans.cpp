#include <iostream>
#include <string>
#include <vector>

#include "pretrans/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return pretrans::cli::run(args, std::cout, std::cerr);
}
