#include <iostream>

#include "tocpur/cli.hpp"

int main(int argc, char** argv) { return tocpur::run_cli(argc, argv, std::cout, std::cerr); }
