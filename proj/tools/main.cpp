#include <iostream>

#include "bo2d/experiments.hpp"

int main(int argc, char** argv) { return bo2d::run_cli(argc, argv, std::cout, std::cerr); }
