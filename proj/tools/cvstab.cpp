#include "cvstab/cli.hpp"

int main(int argc, char** argv) { return cvstab::cli_main(argc, argv); }
