#include <iostream>
#include <string>
#include <vector>

#include "slspec/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return slspec::run_cli(args, std::cout, std::cerr);
}
