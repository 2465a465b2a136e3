#include <iostream>

#include "qpe/cli.hpp"

int main(int argc, char** argv) {
  return qpe::run_cli(argc, argv, std::cout, std::cerr);
}
