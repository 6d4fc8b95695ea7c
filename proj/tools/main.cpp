#include <iostream>
#include <string>
#include <vector>

#include "cli_io.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return hpst::cli::main_entry(args, std::cout, std::cerr);
}
