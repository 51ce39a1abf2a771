#include "purecorr/cli_runner.hpp"

int main(int argc, char** argv) { return purecorr::cli::run_cli(argc, argv); }
