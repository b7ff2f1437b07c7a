// Copyright 2026 The orbital-ssp authors.
// SPDX-License-Identifier: MIT

#include <iostream>

#include "commands.hpp"

int main(int argc, char** argv) { return orbital_ssp::cli::run(argc, argv, std::cout); }
