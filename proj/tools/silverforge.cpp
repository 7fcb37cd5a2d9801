#include "silverforge/cli.hpp"

int main(int argc, char** argv) {
    return silverforge::run_cli(argc, argv);
}
