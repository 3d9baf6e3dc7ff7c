#include <iostream>

#include "dqilab/cli.hpp"

int main(int argc, char** argv) {
    return dqilab::cli_main(argc, argv, std::cout, std::cerr);
}
