#include "cli/commands.hpp"

int main(int argc, char** argv) { return cdprov::cli::run(argc, argv); }
