#include "acl/cli/app.hpp"

int main(int argc, char** argv) { return acl::cli::run({argv + 1, argv + argc}); }
