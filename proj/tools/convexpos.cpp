#include <iostream>

#include "convexpos/cli.hpp"

int main(int argc, char** argv) { return convexpos::cli::run(argc, argv, std::cout, std::cerr); }
