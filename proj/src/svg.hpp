// Copyright 2026 The orbital-ssp authors.
// SPDX-License-Identifier: MIT
//
// SVG rendering of the p and q curves of an instance with the orbital line
// y = T drawn across them.

#ifndef ORBITAL_SSP_SRC_SVG_HPP
#define ORBITAL_SSP_SRC_SVG_HPP

#include <ostream>

#include "orbital_ssp/core.hpp"

namespace orbital_ssp::cli {

// Power-set points are drawn when n <= kSvgPointMaxN.
inline constexpr std::size_t kSvgPointMaxN = 12;

void render_svg(std::ostream& os, const Instance& inst);

}  // namespace orbital_ssp::cli

#endif  // ORBITAL_SSP_SRC_SVG_HPP
