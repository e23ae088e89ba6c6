#include <iostream>

#include "wheellab/cli.hpp"

int main(int argc, char** argv) {
  std::ios::sync_with_stdio(false);
  return wheellab::cli::run(argc, argv, std::cout, std::cerr);
}
