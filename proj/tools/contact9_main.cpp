#include "contact9/cli/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return contact9::cli::main_entry(argc, argv, std::cout, std::cerr); }
