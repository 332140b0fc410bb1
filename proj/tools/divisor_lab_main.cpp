#include "divisor_lab/cli.hpp"

int main(int argc, char** argv) { return divlab::run_command(argc, argv); }
