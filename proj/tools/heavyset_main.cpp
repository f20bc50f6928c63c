#include "heavyset/cli.hpp"

int main(int argc, char** argv) { return heavyset::run_cli(argc, argv); }
