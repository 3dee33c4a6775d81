#include "brank/cli.hpp"

int main(int argc, char** argv) { return brank::cli::run(argc, argv); }
