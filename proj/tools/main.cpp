#include <iostream>
#include <string>
#include <vector>

#include "nblab/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return nblab::run_cli(args, std::cout, std::cerr);
}
