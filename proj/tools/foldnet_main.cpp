#include <iostream>

#include "foldnet/cli.hpp"

int main(int argc, char** argv) {
    return foldnet::cli::main_entry(argc, argv, std::cout, std::cerr);
}
