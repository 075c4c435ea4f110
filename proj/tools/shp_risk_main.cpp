#include <iostream>

#include "shp/cli_app.hpp"

int main(int argc, char** argv) {
    return shp::cli::run(argc, argv, std::cout, std::cerr);
}
