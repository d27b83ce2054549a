#include "scalescope/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return scalescope::cli::run(argc, argv, std::cout, std::cerr); }
