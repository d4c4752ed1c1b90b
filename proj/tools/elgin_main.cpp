#include "elgin/cli.hpp"

int main(int argc, char** argv) { return elgin::cli::run(argc, argv); }
