#include <iostream>

#include "qgraph/cli.hpp"

int main(int argc, char** argv) { return qgraph::run_cli(argc, argv, std::cout, std::cerr); }
