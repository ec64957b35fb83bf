#include "ahcert/cli.hpp"

int main(int argc, char** argv) { return ahcert::cli_main(argc, argv); }
