#include "cli.hpp"

int main(int argc, char **argv)
{
    return coha::cli::run(argc, argv, std::cout, std::cerr);
}
