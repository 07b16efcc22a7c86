#include <iostream>
#include <string>
#include <vector>

#include "cvrob/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return cvrob::run(args, std::cout, std::cerr);
}
