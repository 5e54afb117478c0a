#include <iostream>

#include "fuselet/cli.hpp"

int main(int argc, char** argv) { return fuselet::cli::run(argc, argv, std::cout, std::cerr); }
