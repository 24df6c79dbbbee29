#include <iostream>

#include "exfb/cli.hpp"
#include "exfb/errors.hpp"

int main(int argc, char** argv) {
    exfb::RunConfig config;
    try {
        std::string help;
        config = exfb::parse_command_line(argc, argv, &help);
        if (!help.empty()) {
            std::cout << help;
            return 0;
        }
    } catch (const exfb::Error& e) {
        std::cerr << "usage error: " << e.what() << "\n(run with --help for the option list)\n";
        return 2;
    }
    try {
        return exfb::run(config, std::cout);
    } catch (const exfb::InvalidArgument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
