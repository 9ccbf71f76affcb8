#include "atlas/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    return atlas::main_entry(argc, argv, std::cout, std::cerr);
}
