#include <iostream>
#include <string>
#include <vector>

#include "hardy/cli.hpp"

int main(int argc, char** argv) {
  return hardy::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
