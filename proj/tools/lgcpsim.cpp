#include "lgcp/cli.hpp"

#include <iostream>
#include <string>
#include <vector>

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv, argv + argc);
  return lgcp::cli_main(args, std::cout, std::cerr);
}
