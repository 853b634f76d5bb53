#include <iostream>

#include "shrinkers/cli.hpp"

int main(int argc, char** argv) {
  return shrinkers::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
