#include <iostream>
#include <string>
#include <vector>

#include "rabi/commands.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv, argv + argc);
  return rabi::run_cli(args, std::cerr);
}
