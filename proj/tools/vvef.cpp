#include "vvef/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return vvef::run_cli(argc, argv, std::cout, std::cerr); }
