#include "osc/cli.hpp"

int main(int argc, char** argv) { return osc::cli_run(argc, argv); }
