#include "hierspec/cli.hpp"

int main(int argc, char** argv) { return hierspec::cli::main(argc, argv); }
