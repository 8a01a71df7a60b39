#include <iostream>

#include "hiertie/cli.hpp"

int main(int argc, char** argv) { return hiertie::cli::run(argc, argv, std::cout, std::cerr); }
