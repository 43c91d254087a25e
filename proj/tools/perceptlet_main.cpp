#include <iostream>

#include "perceptlet/cli.hpp"

int main(int argc, char** argv) {
  return perceptlet::cli::run(argc, argv, std::cout, std::cerr);
}
