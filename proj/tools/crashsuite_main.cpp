#include "crashsuite/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return crashsuite::run_cli(argc, argv, std::cout, std::cerr); }
