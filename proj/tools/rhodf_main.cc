#include <iostream>
#include <string>
#include <vector>

#include "rhodf/cli.h"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return rhodf::RunCli(args, std::cin, std::cout, std::cerr);
}
