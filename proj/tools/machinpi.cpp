#include <iostream>

#include "machin/cli.hpp"

int main(int argc, char** argv) { return machin::cli::run(argc, argv, std::cout, std::cerr); }
