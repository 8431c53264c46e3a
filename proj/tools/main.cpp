#include "cogrowth/cli.hpp"

int main(int argc, char** argv) { return cogrowth::run_cli(argc, argv); }
