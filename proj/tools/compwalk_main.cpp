#include "compwalk/cli.hpp"

int main(int argc, char** argv) { return compwalk::parse_and_dispatch(argc, argv); }
