#include <iostream>

#include "bnk/cli.hpp"

int main(int argc, char** argv) { return bnk::runCli(argc, argv, std::cout, std::cerr); }
