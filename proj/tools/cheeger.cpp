#include <iostream>

#include "cheeger/cli.hpp"

int main(int argc, char** argv) {
  return cheeger::run_command(argc, argv, std::cout, std::cerr);
}
