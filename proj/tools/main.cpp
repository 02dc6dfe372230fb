#include <iostream>

#include "idlewage/cli.hpp"

int main(int argc, char** argv) { return idlewage::run(argc, argv, std::cout, std::cerr); }
