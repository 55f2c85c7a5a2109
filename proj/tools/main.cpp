#include <iostream>
#include <vector>

#include "ruledmod/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  const ruledmod::CliResult result = ruledmod::run_cli(std::move(args));
  std::cout << result.out;
  std::cerr << result.err;
  return result.status;
}
