#include <iostream>

#include "dbbound/cli.hpp"

int main(int argc, char** argv) { return dbbound::run_cli(argc, argv, std::cout, std::cerr); }
