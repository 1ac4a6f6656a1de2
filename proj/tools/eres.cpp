#include <iostream>

#include "eres/cli.hpp"

int main(int argc, char** argv) {
  return eres::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
