// Copyright 2026 The orbital-ssp authors.
// SPDX-License-Identifier: MIT
//
// Empirical diagnostics over the orbital graph: configuration graphs of
// local y-intercepts along valid paths, out-degree profiles, product
// inequality audits, growth summaries and the final-graph size bound.

#ifndef ORBITAL_SSP_ANALYSIS_HPP
#define ORBITAL_SSP_ANALYSIS_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "orbital_ssp/bigint.hpp"
#include "orbital_ssp/core.hpp"
#include "orbital_ssp/orbital.hpp"

namespace orbital_ssp {

struct ConfigGraph {
  std::size_t n = 0;
  std::vector<std::vector<BigInt>> F;                         // distinct local y per level
  std::vector<std::vector<std::pair<BigInt, BigInt>>> C;      // distinct (y, y') per level pair
  std::vector<BigInt> gamma;                                  // |F_r|
  std::vector<std::size_t> mu;                                // max distinct successors of one y
  std::size_t states = 0;                                     // (node, y) states visited
  bool truncated = false;
  bool zero_only = false;
};

inline constexpr std::size_t kConfigStateCap = 5000000;

// mu_0 = (n^3 + 3n^2 - 13n + 6) / 3.
inline BigInt mu0(std::size_t n) {
  BigInt v = BigInt(n) * n * n + BigInt(3) * n * n + 6;
  BigInt neg = BigInt(13) * n;
  return v >= neg ? BigInt((v - neg) / 3) : BigInt(0);
}

namespace detail {

template <class Int>
ConfigGraph config_graph_typed(const Instance& inst, const BigInt& target, std::size_t state_cap,
                               bool zero_only) {
  ConfigGraph cg;
  cg.n = inst.n;
  cg.zero_only = zero_only;
  auto geom = make_geometry<Int>(inst);
  auto g = build_g0(geom, from_big<Int>(target), BuildMode::Reachable);
  std::size_t L = g.layers.size();
  std::vector<std::vector<std::set<Int>>> ys(L);
  for (std::size_t li = 0; li < L; ++li) ys[li].resize(g.layers[li].size());
  for (std::uint32_t v = 0; v < g.root_y0.size(); ++v) {
    ys[0][v].insert(g.root_y0[v]);
    ++cg.states;
  }
  for (std::size_t li = 0; li + 1 < L && !cg.truncated; ++li) {
    const auto& Ly = g.layers[li];
    const auto& Ln = g.layers[li + 1];
    for (std::uint32_t v = 0; v < Ly.size() && !cg.truncated; ++v)
      for (const Int& y : ys[li][v])
        for (std::uint32_t a = Ly.out_begin[v]; a < Ly.out_begin[v + 1]; ++a) {
          std::uint32_t w = Ly.out_dst[a];
          Int y2 = y + Ly.out_shift[a];
          if (y2 < 0 || !(y2 < Ln.len[w])) continue;
          if (ys[li + 1][w].insert(y2).second && ++cg.states > state_cap) {
            cg.truncated = true;
            break;
          }
        }
  }
  if (zero_only) {
    std::vector<std::vector<std::set<Int>>> keep(L);
    for (std::size_t li = L; li-- > 0;) {
      const auto& Ly = g.layers[li];
      keep[li].resize(Ly.size());
      for (std::uint32_t v = 0; v < Ly.size(); ++v)
        for (const Int& y : ys[li][v]) {
          bool ok = (Ly.flags[v] & kTrue) && y == 0;
          for (std::uint32_t a = Ly.out_begin[v]; !ok && li + 1 < L && a < Ly.out_begin[v + 1]; ++a)
            ok = keep[li + 1][Ly.out_dst[a]].count(y + Ly.out_shift[a]) > 0;
          if (ok) keep[li][v].insert(y);
        }
    }
    ys = std::move(keep);
  }
  cg.F.resize(L);
  cg.C.resize(L > 0 ? L - 1 : 0);
  cg.gamma.resize(L);
  cg.mu.assign(L, 0);
  for (std::size_t li = 0; li < L; ++li) {
    std::set<Int> f;
    for (const auto& s : ys[li]) f.insert(s.begin(), s.end());
    for (const Int& y : f) cg.F[li].push_back(to_big(y));
    cg.gamma[li] = f.size();
    if (li + 1 == L) continue;
    const auto& Ly = g.layers[li];
    std::set<std::pair<Int, Int>> c;
    for (std::uint32_t v = 0; v < Ly.size(); ++v)
      for (const Int& y : ys[li][v])
        for (std::uint32_t a = Ly.out_begin[v]; a < Ly.out_begin[v + 1]; ++a) {
          Int y2 = y + Ly.out_shift[a];
          if (ys[li + 1][Ly.out_dst[a]].count(y2)) c.insert({y, y2});
        }
    std::size_t run = 0;
    for (auto it = c.begin(); it != c.end(); ++it) {
      run = (it != c.begin() && std::prev(it)->first == it->first) ? run + 1 : 1;
      cg.mu[li] = std::max(cg.mu[li], run);
      cg.C[li].push_back({to_big(it->first), to_big(it->second)});
    }
  }
  while (!cg.gamma.empty() && cg.gamma.back() == 0) {
    cg.gamma.pop_back();
    cg.F.pop_back();
    cg.mu.pop_back();
    if (!cg.C.empty() && cg.C.size() >= cg.gamma.size()) cg.C.pop_back();
  }
  if (!cg.gamma.empty()) cg.mu.back() = 0;
  return cg;
}

}  // namespace detail

// Configuration graph over the valid paths of G0 from the root; with
// zero_only, restricted to states lying on a path that ends at y = 0 on a
// TRUE node.
inline ConfigGraph build_config_graph(const Instance& inst, std::size_t state_cap = kConfigStateCap,
                                      bool zero_only = false) {
  if (inst.T == 0 || inst.T > inst.total()) {
    ConfigGraph cg;
    cg.n = inst.n;
    cg.zero_only = zero_only;
    return cg;
  }
  return dispatch_int(BigInt(std::max(inst.total(), pow2(inst.n + 1)) * 8), [&](auto tag) {
    return detail::config_graph_typed<decltype(tag)>(inst, inst.T, state_cap, zero_only);
  });
}

struct ConfigRow {
  std::size_t r = 0;
  BigInt gamma = 0;
  std::size_t mu = 0;
  BigInt Gamma = 0;  // product gamma_1 .. gamma_r
  BigInt bound = 0;  // mu_0^(2r), or mu_0^r for zero-only graphs
  bool pi_holds = true;
};

struct ConfigAudit {
  std::vector<ConfigRow> rows;
  BigInt mu_0 = 0;
  bool gamma0_is_one = false;
  bool growth_law = true;   // gamma_{r+1} <= gamma_r * mu_r
  bool sandwich = true;     // max(g_r, g_{r+1}) <= |C| <= g_r g_{r+1}
  bool sandwich_upper = true;       // |C| <= g_r g_{r+1}
  bool sandwich_lower_next = true;  // g_{r+1} <= |C|
  bool sandwich_lower_prev = true;  // g_r <= |C|
  std::size_t isolated_levels = 0;  // levels whose points include path ends
  bool product = true;      // every pi_holds for r >= 1
  bool mu_bounded = true;   // mu_r <= mu_0
  bool max_gamma_bound = true;  // max gamma < mu_0^4 (mu_0^2 for zero-only)
  std::vector<std::string> violations;
  bool all() const { return gamma0_is_one && growth_law && sandwich && product && mu_bounded && max_gamma_bound; }
};

inline ConfigAudit product_inequality_audit(const ConfigGraph& cg) {
  ConfigAudit au;
  au.mu_0 = mu0(cg.n);
  au.gamma0_is_one = !cg.gamma.empty() && cg.gamma[0] == 1;
  if (!au.gamma0_is_one) au.violations.push_back("gamma_0 != 1");
  BigInt Gamma = 1;
  BigInt maxg = 0;
  for (std::size_t r = 0; r < cg.gamma.size(); ++r) {
    ConfigRow row;
    row.r = r;
    row.gamma = cg.gamma[r];
    row.mu = cg.mu[r];
    if (r > 0) Gamma *= cg.gamma[r];
    row.Gamma = Gamma;
    row.bound = boost::multiprecision::pow(au.mu_0, static_cast<unsigned>(cg.zero_only ? r : 2 * r));
    row.pi_holds = r == 0 || Gamma < row.bound;
    if (!row.pi_holds) {
      au.product = false;
      au.violations.push_back("product inequality fails at r=" + std::to_string(r));
    }
    if (BigInt(row.mu) > au.mu_0) {
      au.mu_bounded = false;
      au.violations.push_back("mu_r exceeds mu_0 at r=" + std::to_string(r));
    }
    maxg = std::max(maxg, row.gamma);
    if (r + 1 < cg.gamma.size()) {
      if (cg.gamma[r + 1] > cg.gamma[r] * cg.mu[r]) {
        au.growth_law = false;
        au.violations.push_back("growth law fails at r=" + std::to_string(r));
      }
      BigInt csz = cg.C[r].size();
      if (csz > cg.gamma[r] * cg.gamma[r + 1]) au.sandwich_upper = false;
      if (csz < cg.gamma[r + 1]) au.sandwich_lower_next = false;
      if (csz < cg.gamma[r]) {
        au.sandwich_lower_prev = false;
        ++au.isolated_levels;
      }
      if (csz < std::max(cg.gamma[r], cg.gamma[r + 1]) || csz > cg.gamma[r] * cg.gamma[r + 1]) {
        au.sandwich = false;
        au.violations.push_back("arc sandwich fails at r=" + std::to_string(r));
      }
    }
    au.rows.push_back(row);
  }
  BigInt gb = boost::multiprecision::pow(au.mu_0, cg.zero_only ? 2u : 4u);
  au.max_gamma_bound = maxg < gb;
  if (!au.max_gamma_bound) au.violations.push_back("max gamma exceeds the mu_0 power bound");
  return au;
}

struct GrowthSample {
  std::size_t n = 0;
  std::size_t k_peak = 0;
  double eta_peak = 0;
};

struct GrowthRow {
  std::size_t n = 0;
  std::size_t kpeak_max = 0;
  double eta_peak_max = 0;
  std::size_t ref_3logn = 0;
  std::size_t ref_7logn = 0;
};

inline std::size_t ceil_log_mult(std::size_t c, std::size_t n) {
  return n <= 1 ? 0 : static_cast<std::size_t>(std::ceil(c * std::log2(static_cast<double>(n)) - 1e-12));
}

inline std::vector<GrowthRow> growth_summary(const std::vector<GrowthSample>& samples) {
  std::map<std::size_t, GrowthRow> by;
  for (const auto& s : samples) {
    auto& r = by[s.n];
    r.n = s.n;
    r.kpeak_max = std::max(r.kpeak_max, s.k_peak);
    r.eta_peak_max = std::max(r.eta_peak_max, s.eta_peak);
    r.ref_3logn = ceil_log_mult(3, s.n);
    r.ref_7logn = ceil_log_mult(7, s.n);
  }
  std::vector<GrowthRow> out;
  for (auto& [n, r] : by) out.push_back(r);
  return out;
}

struct VmBound {
  BigInt U = 0;
  BigInt v0 = 0;
  std::size_t vm = 0;
  double factor = 0;  // min(2U/(n(n+1)), 2^m)
  double bound = 0;   // factor * |V0|
  bool holds = false;
};

inline VmBound vm_bound_check(const Instance& inst, const BigInt& U, const BigInt& v0, std::size_t vm) {
  VmBound b;
  b.U = U;
  b.v0 = v0;
  b.vm = vm;
  double nn = static_cast<double>(inst.n) * static_cast<double>(inst.n + 1);
  double f1 = 2.0 * U.convert_to<double>() / nn;
  double f2 = std::ldexp(1.0, static_cast<int>(std::min<std::size_t>(inst.m, 1000)));
  b.factor = std::min(f1, f2);
  b.bound = b.factor * v0.convert_to<double>();
  b.holds = static_cast<double>(vm) <= b.bound;
  return b;
}

}  // namespace orbital_ssp

#endif  // ORBITAL_SSP_ANALYSIS_HPP
