#include <iostream>

#include "gromov/cli.hpp"

int main(int argc, char** argv) { return gromov::run(argc, argv, std::cout, std::cerr); }
