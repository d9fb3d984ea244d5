#include <iostream>

#include "vinemeta/cli.hpp"

int main(int argc, char** argv) { return vinemeta::cli::run(argc, argv, std::cout, std::cerr); }
