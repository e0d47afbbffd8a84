#include <iostream>
#include <string>
#include <vector>

#include "stripfit/io.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return stripfit::io::run(args, {std::cin, std::cout, std::cerr});
}
