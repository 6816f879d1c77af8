#include <iostream>

#include "bjg_cli/cli.hpp"

int main(int argc, char** argv) { return bjg::cli::run(argc, argv, std::cout, std::cerr); }
