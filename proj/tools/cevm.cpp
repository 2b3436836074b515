#include <iostream>

#include "cevm/cli.hpp"

int main(int argc, char** argv) { return cevm::cli::main(argc, argv, std::cout, std::cerr); }
