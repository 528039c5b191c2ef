#include <iostream>

#include "tempcast/cli/commands.hpp"

int main(int argc, char** argv) { return tempcast::cli::run(argc, argv, std::cout, std::cerr); }
