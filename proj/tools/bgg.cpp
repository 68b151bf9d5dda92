#include "bgg_main.hpp"

int main(int argc, char** argv) { return bgg::cli::main_entry(argc, argv, std::cin, std::cout, std::cerr); }
