#include "lazseq/cli.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    return lazseq::cli::run_cli(argc, argv, std::cout, std::cerr);
}
