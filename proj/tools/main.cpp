#include "cli.hpp"

int main(int argc, char** argv) { return spiraldim::cli::run(argc, argv); }
