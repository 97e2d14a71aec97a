#include "wikicorpus/cli.hpp"

int main(int argc, char** argv) { return wikicorpus::run_cli(argc, argv); }
