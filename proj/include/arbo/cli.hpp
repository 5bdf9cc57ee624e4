#pragma once

namespace arbo {

// Entry point of the arbo command; returns the process exit code.
int run_cli(int argc, char** argv);

}  // namespace arbo
