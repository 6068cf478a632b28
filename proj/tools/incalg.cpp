#include <iostream>

#include "incalg/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return incalg::run(args, std::cout, std::cerr);
}
