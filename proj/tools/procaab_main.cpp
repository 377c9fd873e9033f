#include <iostream>

#include "procaab/cli.hpp"

int main(int argc, char** argv) { return procaab::cli::run(argc, argv, std::cout, std::cerr); }
