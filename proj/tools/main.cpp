#include <iostream>
#include <string>
#include <vector>

#include "cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv, argv + argc);
  return riskbounds::cli::run(args, std::cout, std::cerr, riskbounds::cli::Environment::from_process());
}
