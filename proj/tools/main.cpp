#include "lfs/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return lfs::run_cli(argc, argv, std::cout, std::cerr); }
