#include "kloos/cli.hpp"

int main(int argc, char** argv) { return kloos::cli::main_entry(argc, argv); }
