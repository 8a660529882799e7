#include "shapegeo/cli.hpp"

int main(int argc, char** argv) { return shapegeo::cli::run(argc, argv); }
