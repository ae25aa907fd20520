#include "zpl/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return zpl::run_cli(argc, argv, std::cout, std::cerr); }
