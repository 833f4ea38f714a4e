#include <iostream>

#include "rlab/cli.hpp"

int main(int argc, char** argv) {
  return rlab::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
