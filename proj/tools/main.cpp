#include "specfrac/cli.hpp"

int main(int argc, char** argv) { return specfrac::cli_main(argc, argv); }
