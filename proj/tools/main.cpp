#include <iostream>

#include "depq/cli.hpp"

int main(int argc, char** argv) { return depq::cli::run(argc, argv, std::cout, std::cerr); }
