// SPDX-License-Identifier: Apache-2.0
#include "portsim/cli.hpp"

int main(int argc, char** argv) { return portsim::cli::run(argc, argv); }
