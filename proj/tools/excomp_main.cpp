#include "excomp/commands.hpp"

int main(int argc, char** argv) { return excomp::commands::run_cli(argc, argv); }
