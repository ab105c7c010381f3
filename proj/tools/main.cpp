#include "tourney/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    return tourney::cli::run(argc, argv, std::cout, std::cerr);
}
