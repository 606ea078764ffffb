#include <iostream>

#include "matknap/cli.hpp"

int main(int argc, char** argv) { return matknap::cli::run(argc, argv, std::cout, std::cerr); }
