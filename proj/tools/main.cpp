#include <iostream>

#include "kusuoka/cli.hpp"

int main(int argc, char** argv) { return kusuoka::cli::run(argc, argv, std::cout, std::cerr); }
