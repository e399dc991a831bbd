#include "drchaos/tools/cli.hpp"

int main(int argc, char** argv) { return drchaos::tools::run_command(argc, argv); }
