#include "tatl/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        tatl::RunConfig cfg = tatl::parse_args(args);
        return tatl::run(cfg);
    } catch (const tatl::UsageError& e) {
        std::cerr << e.what() << "\nRun 'tatl --help' for usage.\n";
        return 2;
    }
}
