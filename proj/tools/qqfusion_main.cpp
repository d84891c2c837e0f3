#include "qqfusion/cli.hpp"

int main(int argc, char** argv) { return qqfusion::run_cli(argc, argv); }
