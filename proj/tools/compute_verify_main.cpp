#include "compute_verify/cli.hpp"

int main(int argc, char** argv) { return compute_verify::cli::run(argc, argv); }
