#include <iostream>

#include "pbtk/cli.hpp"

int main(int argc, char** argv) { return pbtk::cli::main(argc, argv, std::cout, std::cerr); }
