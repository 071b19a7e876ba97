#include "harness/cli.hpp"

int main(int argc, char** argv) { return curvlab::harness::run_cli(argc, argv); }
