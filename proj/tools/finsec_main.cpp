#include <string>
#include <vector>

#include "finsec/cli.hpp"

int main(int argc, char** argv) {
    return finsec::run_cli(std::vector<std::string>(argv + 1, argv + argc));
}
