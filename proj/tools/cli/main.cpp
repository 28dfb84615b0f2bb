#include "cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return rumorlab::cli::run(argc, argv, std::cout, std::cerr); }
