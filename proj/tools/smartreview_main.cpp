#include <iostream>

#include "smartreview/cli/cli.hpp"

int main(int argc, char** argv) {
  return smartreview::cli::run(argc, argv, std::cin, std::cout, std::cerr);
}
