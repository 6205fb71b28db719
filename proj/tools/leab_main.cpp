#include "leab/cli.hpp"

int main(int argc, char** argv) { return leab::cli::run(argc, argv); }
