#include "stfrac/cli.hpp"

int main(int argc, char** argv) { return stfrac::cli::cli_main(argc, argv); }
