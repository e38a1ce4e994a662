#include <iostream>

#include "normcert/cli.hpp"

int main(int argc, char** argv) { return normcert::cli::run(argc, argv, std::cin, std::cout, std::cerr); }
