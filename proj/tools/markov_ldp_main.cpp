#include "markov_ldp/cli.hpp"

int main(int argc, char** argv) { return ldp::execute(argc, argv); }
