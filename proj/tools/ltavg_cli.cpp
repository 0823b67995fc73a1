#include <iostream>

#include "ltavg/cli.hpp"

int main(int argc, char** argv) { return ltavg::run_cli(argc, argv, std::cout, std::cerr); }
