#include <iostream>

#include "hheat/cli.hpp"

int main(int argc, char** argv) { return hheat::cli_main(argc, argv, std::cout, std::cerr); }
