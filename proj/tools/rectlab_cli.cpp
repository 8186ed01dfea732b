#include <rectlab/cli.hpp>

int main(int argc, char** argv) { return rectlab::run_command(argc, argv); }
