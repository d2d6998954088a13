#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) {
  return tft::cli::Run({argv + 1, argv + argc}, std::cout, std::cerr);
}
