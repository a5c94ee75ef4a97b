#include <iostream>

#include "vga/cli.hpp"

int main(int argc, char** argv) { return vga::run_cli(argc, argv, std::cout, std::cerr); }
