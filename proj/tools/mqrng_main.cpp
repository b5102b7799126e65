#include "mqrng/cli.hpp"

int main(int argc, char** argv) {
    return mqrng::run_cli(argc, argv);
}
