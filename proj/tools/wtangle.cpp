#include <iostream>

#include "wtangle/cli.hpp"

int main(int argc, char** argv) { return wtangle::cli::run(argc, argv, std::cout, std::cerr); }
