#include <iostream>

#include "lipext/cli.hpp"

int main(int argc, char** argv) { return lipext::run_cli(argc, argv, std::cout, std::cerr); }
