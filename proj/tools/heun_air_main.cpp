#include "heun_air/cli.hpp"

int main(int argc, char** argv) { return heun_air::cli_main(argc, argv); }
