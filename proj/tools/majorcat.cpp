#include "majorcat/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
  return majorcat::cli_main(argc, argv, std::cout, std::cerr);
}
