#include <iostream>

#include "svagen/cli.hpp"

int main(int argc, char** argv) {
  return svagen::cli::run(argc, argv, std::cout, std::cerr, svagen::cli::process_env());
}
