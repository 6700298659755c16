#include <iostream>

#include "symqudit/cli.hpp"

int main(int argc, char** argv) { return symqudit::cli::run(argc, argv, std::cout, std::cerr); }
