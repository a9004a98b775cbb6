#include <iostream>
#include <string>
#include <vector>

#include "ascentlab/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return ascentlab::cli_main(args, std::cout, std::cerr);
}
