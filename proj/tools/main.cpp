#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) { return rumor::cli::dispatch(argc, argv, std::cout, std::cerr); }
