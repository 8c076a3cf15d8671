#include "cli.hpp"

int main(int argc, char** argv) {
    return colsel_cli::dispatch(argc, argv);
}
