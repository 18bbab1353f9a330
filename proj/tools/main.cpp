#include <iostream>

#include "scatter2d/cli.hpp"

int main(int argc, char** argv) {
  return scatter2d::cli::main_entry(argc, argv, std::cout, std::cerr);
}
