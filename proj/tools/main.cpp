#include "clhide/cli.hpp"

int main(int argc, char** argv) { return clhide::run_cli(argc, argv); }
