#include "evset/cli.hpp"

int main(int argc, char** argv) {
    return evset::run_cli(std::vector<std::string>(argv + 1, argv + argc));
}
