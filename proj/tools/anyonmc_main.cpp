#include <string>
#include <vector>

#include "anyonmc/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return anyonmc::cli::run(args);
}
