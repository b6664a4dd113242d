#include <iostream>
#include <string>
#include <vector>

#include "mframe/cli.hpp"

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv, argv + argc);
    return mframe::run_cli(args, std::cout, std::cerr);
}
