#include "cavmag/cli.hpp"

int main(int argc, char** argv) { return cavmag::cli::run(argc, argv); }
