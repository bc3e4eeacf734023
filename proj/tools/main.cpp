#include "cli.hpp"

int main(int argc, char** argv) { return signsum::cli::run(argc, argv, std::cout, std::cerr); }
