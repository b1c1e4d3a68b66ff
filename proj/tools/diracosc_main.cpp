#include <iostream>

#include "diracosc/cli.hpp"

int main(int argc, char** argv) {
  return diracosc::cli::run(argc, argv, std::cout, std::cerr);
}
