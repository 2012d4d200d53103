#include <iostream>

#include "qcgirth_cli.hpp"

int main(int argc, char **argv) {
  return qcgirth::cli::run(argc, argv, std::cout, std::cerr);
}
