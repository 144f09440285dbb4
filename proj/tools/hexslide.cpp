#include <iostream>

#include "hexslide/cli.hpp"

int main(int argc, char** argv) { return hexslide::run_cli(argc, argv, std::cout, std::cerr); }
