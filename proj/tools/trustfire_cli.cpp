#include "trustfire/cli.hpp"

int main(int argc, char** argv) { return trustfire::cli::main(argc, argv); }
