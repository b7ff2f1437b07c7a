// Copyright 2026 The orbital-ssp authors.
// SPDX-License-Identifier: MIT
//
// Command-line front end: argument parsing and the subcommands.

#ifndef ORBITAL_SSP_SRC_COMMANDS_HPP
#define ORBITAL_SSP_SRC_COMMANDS_HPP

#include <ostream>

namespace orbital_ssp::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitMismatch = 1;
inline constexpr int kExitInput = 2;
inline constexpr int kExitGuard = 3;

// Runs the command line; output goes to out, diagnostics to stderr.
int run(int argc, char** argv, std::ostream& out);

}  // namespace orbital_ssp::cli

#endif  // ORBITAL_SSP_SRC_COMMANDS_HPP
