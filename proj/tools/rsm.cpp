#include <iostream>

#include "rsm/cli.hpp"

int main(int argc, char** argv) { return rsm::cli::run(argc, argv, std::cout, std::cerr); }
