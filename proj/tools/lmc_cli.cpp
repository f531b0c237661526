#include <iostream>

#include "lmc/cli.hpp"

int main(int argc, char** argv)
{
    return lmc::cli::run(argc, argv, std::cout, std::cerr);
}
