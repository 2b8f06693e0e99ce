#include <iostream>
#include <string>
#include <vector>

#include "gbott/cli.hpp"

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return gbott::run_cli(args, std::cout, std::cerr);
}
