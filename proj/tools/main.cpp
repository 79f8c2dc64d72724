#include <iostream>
#include <string>
#include <vector>

#include "homlie/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return homlie::run(args, std::cout, std::cerr);
}
