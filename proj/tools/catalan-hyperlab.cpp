#include <iostream>

#include "hyperlab/cli.hpp"

int main(int argc, char** argv) { return hyperlab::run_cli(argc, argv, std::cout, std::cerr); }
