#include <iostream>
#include <string>
#include <vector>

#include "genusbounds/cli.hpp"

int main(int argc, char ** argv)
{
    std::vector<std::string> args(argv, argv + argc);
    return genusbounds::cli::run(args, std::cout, std::cerr);
}
