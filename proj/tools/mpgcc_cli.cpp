#include <iostream>

#include "mpgcc/cli_io.hpp"

int main(int argc, char** argv) { return mpgcc::run_cli(argc, argv, std::cout, std::cerr); }
