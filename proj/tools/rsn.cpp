#include <iostream>

#include "rsn/cli.hpp"

int main(int argc, char** argv) { return rsn::run_cli(argc, argv, std::cout, std::cerr); }
