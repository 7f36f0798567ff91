#include "ahmc/experiment.hpp"

int main(int argc, char** argv) { return ahmc::cli_main(argc, argv); }
