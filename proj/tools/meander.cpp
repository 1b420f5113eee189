#include "meander/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return meander::cli::run(argc, argv, std::cout, std::cerr); }
