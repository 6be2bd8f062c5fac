#include "lplc2/cli/app.hpp"

int main(int argc, char** argv) { return lplc2::cli::run(argc, argv); }
