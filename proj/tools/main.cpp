#include "rankrobust/cli.hpp"

int main(int argc, char** argv) { return rankrobust::cli::run(argc, argv); }
