#include <iostream>

#include "eqra/cli.hpp"

int main(int argc, char** argv) {
    return eqra::cli::run({argv + 1, argv + argc}, std::cout, std::cerr);
}
