#include <iostream>

#include "kntorus/cli.hpp"

int main(int argc, char** argv) { return kntorus::run_cli(argc, argv, std::cout, std::cerr); }
