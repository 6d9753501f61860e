#include <cstdlib>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include "noma/cli.hpp"

int main(int argc, char** argv) {
    std::optional<std::string> workers_env;
    if (const char* env = std::getenv("NOMA_SIM_WORKERS")) workers_env = env;
    try {
        return noma::cli::run(argc, argv, std::cout, std::cerr, workers_env);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return noma::cli::kExitIo;
    }
}
