#include <iostream>

#include "khs_cli.hpp"

int main(int argc, char** argv) { return khs::cli::run(argc, argv, std::cout, std::cerr); }
