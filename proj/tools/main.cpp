#include <iostream>

#include "cylcol/cli.hpp"

int main(int argc, char** argv) { return cylcol::run_cli(argc, argv, std::cout, std::cerr); }
