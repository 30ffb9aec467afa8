#include "nodalgen/cli.hpp"

int main(int argc, char** argv) { return nodalgen::cli::run(argc, argv); }
