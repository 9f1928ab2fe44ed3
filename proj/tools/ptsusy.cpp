#include "ptsusy/cli.hpp"

int main(int argc, char** argv) { return ptsusy::cli::run(argc, argv); }
