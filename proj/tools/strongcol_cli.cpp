#include "strongcol/cli.hpp"

int main(int argc, char** argv) { return strongcol::cli_main(argc, argv); }
