#include <iostream>

#include "tanplane/cli.hpp"

int main(int argc, char** argv) { return tanplane::run(argc, argv, std::cout, std::cerr); }
