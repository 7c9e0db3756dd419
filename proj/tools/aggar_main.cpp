#include <iostream>
#include <string>
#include <vector>

#include "aggar/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return aggar::cli::run(args, std::cin, std::cout, std::cerr, aggar::cli::Environment::from_process());
}
