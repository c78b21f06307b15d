#include <iostream>

#include "gkdv/cli/commands.hpp"

int main(int argc, char** argv) { return gkdv::cli::run(argc, argv, std::cout, std::cerr); }
