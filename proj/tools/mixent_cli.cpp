#include "mixent/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return mixent::cli_main(argc, argv, std::cout, std::cerr); }
