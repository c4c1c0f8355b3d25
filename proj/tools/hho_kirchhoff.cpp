#include <iostream>

#include "hho/cli.hpp"

int main(int argc, char** argv)
{
    return hho::cli_main(argc, argv, std::cout, std::cerr);
}
