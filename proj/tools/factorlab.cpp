#include <iostream>

#include "factorlab/cli.hpp"

int main(int argc, char** argv) { return factorlab::cli::run(argc, argv, std::cout, std::cerr); }
