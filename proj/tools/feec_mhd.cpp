#include "feec_mhd/cli.hpp"

int main(int argc, char** argv) { return feec_mhd::cli_main(argc, argv); }
