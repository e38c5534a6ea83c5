#include <iostream>

#include "transgauss/cli.hpp"

int main(int argc, char** argv) { return transgauss::cli::run(argc, argv, std::cout, std::cerr); }
