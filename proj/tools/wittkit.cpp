#include "wittkit/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return wittkit::cli::run(argc, argv, std::cout, std::cerr); }
