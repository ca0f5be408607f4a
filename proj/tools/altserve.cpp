#include <iostream>

#include "altserve/cli.hpp"

int main(int argc, char** argv) {
  return altserve::cli_main(argc, argv, std::cout, std::cerr);
}
