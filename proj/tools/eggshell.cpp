#include "cli.hpp"

int main(int argc, char** argv) { return eggshell::cli::main(argc, argv); }
