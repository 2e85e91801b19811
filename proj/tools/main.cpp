#include <iostream>
#include <string>
#include <vector>

#include "rulek/cli.hpp"

int main(int argc, char** argv) {
    const std::vector<std::string> args(argv, argv + argc);
    return rulek::cli::dispatch(args, std::cout, std::cerr);
}
