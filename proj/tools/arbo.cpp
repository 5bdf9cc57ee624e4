#include "arbo/cli.hpp"

int main(int argc, char** argv) { return arbo::run_cli(argc, argv); }
