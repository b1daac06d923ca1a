#include "gamesmell/cli.hpp"

int main(int argc, char** argv) { return gamesmell::cli_main(argc, argv); }
