#include <iostream>

#include "schutz/cli.hpp"

int main(int argc, char** argv) { return schutz::run(argc, argv, std::cout, std::cerr); }
