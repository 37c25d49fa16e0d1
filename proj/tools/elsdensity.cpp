#include <iostream>
#include <string>
#include <vector>

#include "els/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return els::cli::run(args, std::cout, std::cerr);
}
