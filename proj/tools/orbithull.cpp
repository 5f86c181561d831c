#include <iostream>

#include "orbithull/cli.hpp"

int main(int argc, char** argv) { return orbithull::cli::run(argc, argv, std::cout, std::cerr); }
