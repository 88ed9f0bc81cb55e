#include <string>
#include <vector>

#include "keplertop/cli.hpp"

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return keplertop::run_cli(std::move(args));
}
