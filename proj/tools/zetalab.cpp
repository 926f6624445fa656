#include <iostream>

#include "zetalab/cli/cli.hpp"

int main(int argc, char** argv) { return zetalab::cli::main_entry(argc, argv, std::cout, std::cerr); }
