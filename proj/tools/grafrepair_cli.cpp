#include "grafrepair/cli.hpp"

int main(int argc, char** argv) { return gr::cli_dispatch(argc, argv); }
