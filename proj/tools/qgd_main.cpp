#include <qgd/cli.hpp>

int main(int argc, char** argv) { return qgd::cli::run(argc, argv); }
