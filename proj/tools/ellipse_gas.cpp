#include <iostream>

#include "ellgas/cli.hpp"

int main(int argc, char** argv) { return ellgas::cli::run(argc, argv, std::cout, std::cerr); }
