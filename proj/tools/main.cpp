#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) { return owlport::run_cli(argc, argv, std::cout, std::cerr, std::cin); }
