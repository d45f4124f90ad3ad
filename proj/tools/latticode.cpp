#include <iostream>

#include "latticode/cli.hpp"

int main(int argc, char** argv) { return latticode::cli::run(argc, argv, std::cout, std::cerr); }
