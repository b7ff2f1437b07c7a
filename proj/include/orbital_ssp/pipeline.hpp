// Copyright 2026 The orbital-ssp authors.
// SPDX-License-Identifier: MIT
//
// End-to-end solve: choose the integer width, build G0 on the orbital line,
// run the refine/filter rounds, count and extract solution indices, and
// validate every emitted index with the subset-sum function.

#ifndef ORBITAL_SSP_PIPELINE_HPP
#define ORBITAL_SSP_PIPELINE_HPP

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "orbital_ssp/bigint.hpp"
#include "orbital_ssp/core.hpp"
#include "orbital_ssp/ihm.hpp"
#include "orbital_ssp/orbital.hpp"

namespace orbital_ssp {

struct SolveOptions {
  std::size_t indices_cap = 1000000;
  bool count_only = false;
  bool q_start = false;     // solve the reflected target A_n - T and complement
  bool full_build = false;  // materialize the full G0 instead of the root-reachable part
  FilterMode filter_mode = FilterMode::Exact;
  std::ostream* dump_final = nullptr;
};

struct SolveResult {
  BigInt n_sols = 0;
  BigInt zero_paths = 0;
  std::vector<BigInt> indices;  // user-order indices, ascending
  bool truncated = false;
  std::size_t unsound = 0;  // emitted indices failing sigma(index) == T
  std::vector<IterationMetric> metrics;
  BigInt v0 = 0, e0 = 0;  // full G0 sizes
  std::size_t g0_nodes = 0, g0_arcs = 0;  // built G0 sizes
  std::size_t roots = 0;
  std::size_t rounds = 0;
  std::size_t k_peak = 0;
  double eta_peak = 0;
  bool cap_bound = false;
  std::size_t final_nodes = 0, final_arcs = 0;
  GmCheck gm;
  bool gm_nonempty = false;
  std::string int_type;
  double ms = 0;
};

namespace detail {

template <class Int>
SolveResult solve_typed(const Instance& inst, const BigInt& target, const SolveOptions& opt) {
  SolveResult res;
  res.int_type = int_type_name<Int>();
  auto geom = make_geometry<Int>(inst);
  G0Stats st;
  BuildMode bm = opt.full_build ? BuildMode::Full
                 : opt.filter_mode == FilterMode::Clipped ? BuildMode::Windowed
                                                          : BuildMode::Reachable;
  auto g0 = build_g0(geom, from_big<Int>(target), bm, &st);
  res.v0 = st.full_nodes;
  res.e0 = st.full_arcs;
  res.roots = st.roots;
  res.g0_nodes = g0.node_count();
  res.g0_arcs = g0.arc_count();
  res.rounds = bit_length(to_big(geom.max_len));
  auto run = ihm_run(std::move(g0), res.v0.convert_to<double>(), res.e0.convert_to<double>(), res.rounds,
                     std::max<std::size_t>(inst.n, 1), opt.filter_mode);
  res.metrics = run.metrics;
  res.k_peak = run.k_peak;
  res.eta_peak = run.eta_peak;
  res.cap_bound = run.cap_bound_any;
  res.final_nodes = run.graph.node_count();
  res.final_arcs = run.graph.arc_count();
  res.gm_nonempty = !run.graph.empty();
  res.gm = check_final_graph(run.graph);
  auto sc = count_solutions(run.graph);
  res.n_sols = sc.n_sols;
  res.zero_paths = sc.zero_paths;
  if (!opt.count_only) {
    auto ex = extract_indices(run.graph, opt.indices_cap);
    res.truncated = ex.truncated;
    res.indices = std::move(ex.indices);
  }
  if (opt.dump_final) dump_graph(*opt.dump_final, geom, run.graph);
  return res;
}

}  // namespace detail

// Width bound for the engine's integers: coordinates reach A_n and 2^n, and
// window arithmetic adds a few such terms.
inline BigInt engine_bound(const Instance& inst) {
  BigInt b = std::max(inst.total(), pow2(inst.n + 1));
  return b * 8;
}

inline SolveResult solve(const Instance& inst, const SolveOptions& opt = {}) {
  auto t0 = std::chrono::steady_clock::now();
  SolveResult res;
  BigInt target = opt.q_start ? BigInt(inst.total() - inst.T) : inst.T;
  BigInt full = pow2(inst.n) - 1;
  if (target == 0) {
    res.n_sols = 1;
    res.zero_paths = 1;
    res.int_type = "none";
    if (!opt.count_only) res.indices.push_back(BigInt(0));
  } else {
    res = dispatch_int(engine_bound(inst), [&](auto tag) {
      return detail::solve_typed<decltype(tag)>(inst, target, opt);
    });
  }
  for (auto& x : res.indices) {
    if (opt.q_start) x = full - x;
    x = to_user_index(inst, x);
  }
  std::sort(res.indices.begin(), res.indices.end());
  for (const auto& x : res.indices)
    if (sigma(inst, from_user_index(inst, x)) != inst.T) ++res.unsound;
  res.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

}  // namespace orbital_ssp

#endif  // ORBITAL_SSP_PIPELINE_HPP
