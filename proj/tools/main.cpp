#include <iostream>

#include "wbnet/app/commands.hpp"

int main(int argc, char** argv) { return wbnet::app::run_cli(argc, argv, std::cout, std::cerr); }
