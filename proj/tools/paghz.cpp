#include <iostream>

#include "paghz/cli.hpp"

int main(int argc, char** argv) {
    return paghz::cli::run(argc, argv, std::cout, std::cerr);
}
