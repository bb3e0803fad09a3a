#include "lrfc/cli.hpp"

int main(int argc, char** argv) { return lrfc::cli::run(argc, argv, std::cout, std::cerr); }
