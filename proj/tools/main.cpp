#include "cli.hpp"

int main(int argc, char** argv) { return lowdefect::cli::run(argc, argv); }
