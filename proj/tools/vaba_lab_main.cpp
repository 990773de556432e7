// SPDX-License-Identifier: Apache-2.0
#include "vaba/cli.hpp"

int main(int argc, char** argv) { return vaba::cli::run(argc, argv); }
