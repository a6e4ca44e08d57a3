#include <iostream>

#include "xjulia_cli/commands.hpp"

int main(int argc, char** argv) { return xjulia::cli::run(argc, argv, std::cout, std::cerr); }
