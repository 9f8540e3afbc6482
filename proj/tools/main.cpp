#include "rank1kit/cli.hpp"

int main(int argc, char** argv) { return rank1kit::cli::main_entry(argc, argv); }
