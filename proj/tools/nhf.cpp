#include <iostream>

#include "nhf/cli.hpp"

int main(int argc, char** argv) { return nhf::cli_run(argc, argv, std::cout, std::cerr); }
