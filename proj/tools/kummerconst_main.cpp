#include <iostream>

#include "kummerconst/cli.hpp"

int main(int argc, char** argv) { return kummerconst::cli::run(argc, argv, std::cout, std::cerr); }
