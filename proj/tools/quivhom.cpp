#include <iostream>

#include "quivhom/cli/commands.hpp"

int main(int argc, char** argv) { return quivhom::cli::run_cli(argc, argv, std::cout, std::cerr); }
