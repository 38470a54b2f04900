#include <iostream>
#include <string>
#include <vector>

#include "robinlab/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return robinlab::cli::run(args, std::cout, std::cerr);
}
