#include "tqet/cli.hpp"

int main(int argc, char** argv) { return tqet::run_cli(argc, argv); }
