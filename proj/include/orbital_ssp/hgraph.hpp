// Copyright 2026 The orbital-ssp authors.
// SPDX-License-Identifier: MIT
//
// The transformation graph H: path counts into its elements and the nested
// y-intervals (wormholes) swept by a transformation path.

#ifndef ORBITAL_SSP_HGRAPH_HPP
#define ORBITAL_SSP_HGRAPH_HPP

#include <cstddef>
#include <set>
#include <utility>
#include <vector>

#include "orbital_ssp/bigint.hpp"
#include "orbital_ssp/core.hpp"

namespace orbital_ssp {

// Triangular cache of binomial coefficients built by the Pascal recurrence.
class PascalTable {
 public:
  const BigInt& operator()(std::size_t n, std::size_t k) {
    static const BigInt zero = 0;
    if (k > n) return zero;
    while (rows_.size() <= n) {
      std::size_t r = rows_.size();
      std::vector<BigInt> row(r + 1, 1);
      for (std::size_t i = 1; i < r; ++i) row[i] = rows_[r - 1][i - 1] + rows_[r - 1][i];
      rows_.push_back(std::move(row));
    }
    return rows_[n][k];
  }

 private:
  std::vector<std::vector<BigInt>> rows_;
};

inline PascalTable& pascal() {
  thread_local PascalTable t;
  return t;
}

// Number of paths of length i in H ending at an element of character j:
// C(j-1, i-1).
inline BigInt wp(std::size_t i, std::size_t j, std::size_t n) {
  if (i < 1 || i > j || j > n) throw InputError("wp: indices out of range");
  return pascal()(j - 1, i - 1);
}

// Number of paths of length r in H: C(n, r).
inline BigInt beta(std::size_t r, std::size_t n) {
  if (r > n) throw InputError("beta: r out of range");
  return pascal()(n, r);
}

// C(n, r) == sum_{t=r-1}^{n-1} C(t, r-1).
inline bool hockey_stick_holds(std::size_t n, std::size_t r) {
  if (r < 1 || r > n) return false;
  BigInt s = 0;
  for (std::size_t t = r - 1; t <= n - 1; ++t) s += pascal()(t, r - 1);
  return s == pascal()(n, r);
}

struct Wormhole {
  std::vector<BigInt> lower;
  std::vector<BigInt> upper;
};

inline void check_path(const Instance& inst, const std::vector<std::size_t>& ks) {
  if (ks.empty()) throw InputError("transformation path must be nonempty");
  for (std::size_t i = 0; i < ks.size(); ++i) {
    if (ks[i] < 1 || ks[i] > inst.n) throw InputError("path character out of range");
    if (i && ks[i] >= ks[i - 1]) throw InputError("path characters must strictly decrease");
  }
}

// Wormhole of a path k_1 > ... > k_r from p_n: l_i is the alternating sum
// A_{k_1} - A_{k_2} + ... over the first i terms (i even) or i-1 terms (i odd),
// and h_i = l_i + A_{k_i}.
inline Wormhole wormhole(const Instance& inst, const std::vector<std::size_t>& ks) {
  check_path(inst, ks);
  Wormhole w;
  BigInt alt = 0;
  for (std::size_t i = 1; i <= ks.size(); ++i) {
    const BigInt& Ak = inst.A[ks[i - 1]];
    if (i % 2 == 0) {
      alt -= Ak;
      w.lower.push_back(alt);
    } else {
      w.lower.push_back(alt);
      alt += Ak;
    }
    w.upper.push_back(w.lower.back() + Ak);
  }
  return w;
}

// Number of leading levels whose interval contains T.
inline std::size_t wormhole_valid_prefix(const Wormhole& w, const BigInt& T) {
  std::size_t i = 0;
  while (i < w.lower.size() && w.lower[i] <= T && T <= w.upper[i]) ++i;
  return i;
}

inline bool wormhole_valid(const Wormhole& w, const BigInt& T) {
  return wormhole_valid_prefix(w, T) == w.lower.size();
}

struct WormholeCounts {
  BigInt valid = 0;     // beta_T(r)
  BigInt distinct = 0;  // beta-hat_T(r): distinct final intervals among valid paths
  BigInt total = 0;     // C(n, r)
};

// Enumerates all C(n, r) paths of length r.
inline WormholeCounts count_valid_wormholes(const Instance& inst, const BigInt& T, std::size_t r) {
  if (inst.n > 14) throw GuardError("count_valid_wormholes requires n <= 14");
  if (r < 1 || r > inst.n) throw InputError("path length out of range");
  WormholeCounts c;
  std::set<std::pair<BigInt, BigInt>> finals;
  std::vector<std::size_t> ks(r);
  for (std::uint32_t mask = 0; mask < (1u << inst.n); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcount(mask)) != r) continue;
    std::size_t t = 0;
    for (std::size_t k = inst.n; k >= 1; --k)
      if (mask >> (k - 1) & 1) ks[t++] = k;
    ++c.total;
    Wormhole w = wormhole(inst, ks);
    if (wormhole_valid(w, T)) {
      ++c.valid;
      finals.insert({w.lower.back(), w.upper.back()});
    }
  }
  c.distinct = finals.size();
  return c;
}

}  // namespace orbital_ssp

#endif  // ORBITAL_SSP_HGRAPH_HPP
