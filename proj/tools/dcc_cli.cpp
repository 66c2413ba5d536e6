#include <dcc/cli.hpp>

#include <iostream>

int main(int argc, char** argv) {
    return dcc::cli::run(argc, argv, std::cout, std::cerr);
}
