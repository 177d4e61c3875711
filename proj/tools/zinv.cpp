#include "zinv_cli.hpp"

int main(int argc, char** argv) { return zinv::cli::run(argc, argv, std::cout, std::cerr); }
