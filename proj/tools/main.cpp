#include "bellid/cli.hpp"

int main(int argc, char** argv)
{
    return bellid::run_cli(argc, argv);
}
