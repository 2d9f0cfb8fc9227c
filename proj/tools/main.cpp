#include <iostream>

#include "chipstab/cli.hpp"

int main(int argc, char** argv) { return chipstab::cli::run(argc, argv, std::cout, std::cerr); }
