#include <iostream>
#include <string>
#include <vector>

#include "focksim/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return focksim::cli_main(args, std::cout, std::cerr);
}
