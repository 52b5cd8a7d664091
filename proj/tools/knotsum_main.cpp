#include <iostream>

#include "knotsum/cli.hpp"

int main(int argc, char** argv) { return knotsum::run_cli(argc, argv, std::cout, std::cerr); }
