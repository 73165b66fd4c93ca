#include <iostream>

#include "tnz/cli.hpp"

int main(int argc, char** argv) { return tnz::run_cli(argc, argv, std::cout, std::cerr); }
