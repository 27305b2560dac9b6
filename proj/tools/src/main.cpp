#include <iostream>

#include "roboto/cli/cli.hpp"

int main(int argc, char** argv)
{
  std::vector<std::string> args(argv + 1, argv + argc);
  return roboto::cli::runCli(args, std::cin, std::cout, std::cerr);
}
