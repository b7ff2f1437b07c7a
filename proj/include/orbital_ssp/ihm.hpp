// Copyright 2026 The orbital-ssp authors.
// SPDX-License-Identifier: MIT
//
// Iterative refine/filter engine over a layered DAG: extreme path sums,
// node/arc filtering to a fixed point, midpoint refinement, the m-round
// driver with growth metrics, solution counting and index extraction, and
// the structural checks of the final graph.

#ifndef ORBITAL_SSP_IHM_HPP
#define ORBITAL_SSP_IHM_HPP

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "orbital_ssp/bigint.hpp"
#include "orbital_ssp/core.hpp"
#include "orbital_ssp/dag.hpp"
#include "orbital_ssp/orbital.hpp"

namespace orbital_ssp {

template <class Int>
using Bounds = std::vector<std::vector<Window<Int>>>;

enum class Direction { Forward, Reverse };

// Exact uses the true extreme path sums; Clipped intersects every node's
// window with its admissible range while propagating.
enum class FilterMode { Exact, Clipped };

inline const char* filter_mode_name(FilterMode m) { return m == FilterMode::Exact ? "exact" : "clipped"; }

inline FilterMode parse_filter_mode(const std::string& s) {
  if (s == "exact") return FilterMode::Exact;
  if (s == "clipped") return FilterMode::Clipped;
  throw InputError("unknown filter mode '" + s + "'");
}

// Extreme local-y values over paths. Forward starts at every layer-0 node
// with its y0 and adds each arc's shift; reverse starts with 0 at every TRUE
// node and subtracts shifts walking arcs backwards. With clipped == true each
// node's window is intersected with its admissible range before propagating.
template <class Int>
Bounds<Int> sssp_extremes(const LayeredDag<Int>& g, Direction dir, bool clipped) {
  Bounds<Int> b(g.layers.size());
  for (std::size_t li = 0; li < g.layers.size(); ++li) b[li].assign(g.layers[li].size(), Window<Int>{});
  auto clip = [&](std::size_t li, std::uint32_t v) {
    if (clipped) b[li][v] = b[li][v].intersect(node_range(g.layers[li].len[v]));
  };
  if (dir == Direction::Forward) {
    for (std::uint32_t v = 0; v < (g.layers.empty() ? 0 : g.layers[0].size()); ++v) {
      b[0][v] = Window<Int>::of(g.root_y0[v], g.root_y0[v]);
      clip(0, v);
    }
    for (std::size_t li = 0; li + 1 < g.layers.size(); ++li) {
      const auto& L = g.layers[li];
      for (std::uint32_t v = 0; v < L.size(); ++v) {
        const auto& w = b[li][v];
        if (!w.has) continue;
        for (std::uint32_t a = L.out_begin[v]; a < L.out_begin[v + 1]; ++a)
          b[li + 1][L.out_dst[a]].hull(w.lo + L.out_shift[a], w.hi + L.out_shift[a]);
      }
      for (std::uint32_t v = 0; v < g.layers[li + 1].size(); ++v) clip(li + 1, v);
    }
  } else {
    for (std::size_t li = g.layers.size(); li-- > 0;) {
      const auto& L = g.layers[li];
      for (std::uint32_t v = 0; v < L.size(); ++v) {
        auto& w = b[li][v];
        if (L.flags[v] & kTrue) w.hull(Int(0), Int(0));
        if (li + 1 < g.layers.size())
          for (std::uint32_t a = L.out_begin[v]; a < L.out_begin[v + 1]; ++a) {
            const auto& d = b[li + 1][L.out_dst[a]];
            if (d.has) w.hull(d.lo - L.out_shift[a], d.hi - L.out_shift[a]);
          }
        clip(li, v);
      }
    }
  }
  return b;
}

struct FilterReport {
  std::size_t sweeps = 0;
  bool cap_bound = false;  // the sweep cap was reached while still changing
  std::size_t nodes_removed = 0;
  std::size_t arcs_removed = 0;
  std::size_t relabeled = 0;
};

// Node/arc filtering to a fixed point, at most sweep_cap sweeps.
template <class Int>
FilterReport filter(LayeredDag<Int>& g, std::size_t sweep_cap, FilterMode mode = FilterMode::Exact) {
  bool clipped = mode == FilterMode::Clipped;
  FilterReport rep;
  while (rep.sweeps < sweep_cap && !g.empty()) {
    ++rep.sweeps;
    auto F = sssp_extremes(g, Direction::Forward, clipped);
    auto R = sssp_extremes(g, Direction::Reverse, clipped);
    bool changed = false;
    std::vector<std::vector<char>> node_keep(g.layers.size()), arc_keep(g.layers.size());
    std::size_t removed_nodes = 0, removed_arcs = 0;
    for (std::size_t li = 0; li < g.layers.size(); ++li) {
      auto& L = g.layers[li];
      node_keep[li].assign(L.size(), 0);
      for (std::uint32_t v = 0; v < L.size(); ++v) {
        node_keep[li][v] = F[li][v].intersect(R[li][v]).intersect(node_range(L.len[v])).has;
        if (!node_keep[li][v]) {
          ++removed_nodes;
          continue;
        }
        if ((L.flags[v] & kTrue) && F[li][v].lo > 0) {
          L.flags[v] &= static_cast<std::uint8_t>(~(kTrue | kDesignated));
          ++rep.relabeled;
          changed = true;
        }
      }
    }
    for (std::size_t li = 0; li < g.layers.size(); ++li) {
      const auto& L = g.layers[li];
      arc_keep[li].assign(L.arc_count(), 0);
      if (li + 1 >= g.layers.size()) continue;
      for (std::uint32_t v = 0; v < L.size(); ++v) {
        for (std::uint32_t a = L.out_begin[v]; a < L.out_begin[v + 1]; ++a) {
          std::uint32_t d = L.out_dst[a];
          bool keep = node_keep[li][v] && node_keep[li + 1][d];
          if (keep) {
            const Int& s = L.out_shift[a];
            const auto& fs = F[li][v];
            const auto& fd = F[li + 1][d];
            const auto& rs = R[li][v];
            const auto& rd = R[li + 1][d];
            keep = Window<Int>::of(fs.lo + s, fs.hi + s).intersect(fd).has &&
                   Window<Int>::of(rd.lo - s, rd.hi - s).intersect(rs).has;
          }
          arc_keep[li][a] = keep;
          if (!keep) ++removed_arcs;
        }
      }
    }
    if (removed_nodes || removed_arcs) {
      changed = true;
      rep.nodes_removed += removed_nodes;
      rep.arcs_removed += removed_arcs;
      g = compact(g, node_keep, &arc_keep);
    }
    if (!changed) return rep;
    if (rep.sweeps == sweep_cap) rep.cap_bound = true;
  }
  return rep;
}

// Splits every node of length > 1 at the floored midpoint into children
// (0, h) and (h, len - h); keeps the child arcs whose ranges interact; only
// offset-0 children inherit TRUE and designation; each root keeps the child
// holding its start value; unreachable nodes are pruned.
template <class Int>
LayeredDag<Int> refine(const LayeredDag<Int>& g) {
  std::size_t nl = g.layers.size();
  std::vector<std::vector<std::uint32_t>> first(nl);
  std::vector<std::vector<std::uint8_t>> nchild(nl);
  LayeredDag<Int> out;
  out.layers.resize(nl);
  for (std::size_t li = 0; li < nl; ++li) {
    const auto& L = g.layers[li];
    auto& N = out.layers[li];
    first[li].resize(L.size());
    nchild[li].resize(L.size());
    for (std::uint32_t v = 0; v < L.size(); ++v) {
      const Int& len = L.len[v];
      std::uint8_t keep_flags = L.flags[v] & kTypeQ;
      if (li == 0) {
        const Int& y0 = g.root_y0[v];
        if (len > 1) {
          Int h = len / 2;
          bool upper = y0 >= h;
          Int o = upper ? h : Int(0);
          Int l = upper ? Int(len - h) : h;
          first[li][v] = N.add_node(L.curve[v], L.edge[v], L.off[v] + o, l, upper ? keep_flags : L.flags[v]);
          nchild[li][v] = 1;
          out.root_y0.push_back(y0 - o);
        } else {
          first[li][v] = N.add_node(L.curve[v], L.edge[v], L.off[v], len, L.flags[v]);
          nchild[li][v] = 1;
          out.root_y0.push_back(y0);
        }
        out.root_x.push_back(g.root_x[v]);
        continue;
      }
      if (len > 1) {
        Int h = len / 2;
        first[li][v] = N.add_node(L.curve[v], L.edge[v], L.off[v], h, L.flags[v]);
        N.add_node(L.curve[v], L.edge[v], L.off[v] + h, len - h, keep_flags);
        nchild[li][v] = 2;
      } else {
        first[li][v] = N.add_node(L.curve[v], L.edge[v], L.off[v], len, L.flags[v]);
        nchild[li][v] = 1;
      }
    }
  }
  for (std::size_t li = 0; li < nl; ++li) {
    const auto& L = g.layers[li];
    auto& N = out.layers[li];
    const auto& M = out.layers;
    std::size_t arcs_hint = L.arc_count() * 2;
    N.out_dst.reserve(arcs_hint);
    N.out_shift.reserve(arcs_hint);
    N.out_dx.reserve(arcs_hint);
    N.out_begin.reserve(N.size() + 1);
    for (std::uint32_t v = 0; v < L.size(); ++v) {
      for (std::uint8_t cs = 0; cs < nchild[li][v]; ++cs) {
        std::uint32_t sv = first[li][v] + cs;
        Int os = N.off[sv] - L.off[v];
        const Int& ls = N.len[sv];
        if (li + 1 < nl && ls > 0) {
          const auto& D = g.layers[li + 1];
          for (std::uint32_t a = L.out_begin[v]; a < L.out_begin[v + 1]; ++a) {
            std::uint32_t d = L.out_dst[a];
            Int base = L.out_shift[a] + os;
            for (std::uint8_t cd = 0; cd < nchild[li + 1][d]; ++cd) {
              std::uint32_t dv = first[li + 1][d] + cd;
              Int od = M[li + 1].off[dv] - D.off[d];
              const Int& ld = M[li + 1].len[dv];
              if (edges_interact(base, Int(base + ls), od, Int(od + ld)))
                N.add_arc(dv, base - od, L.out_dx[a]);
            }
          }
        }
        N.close_node();
      }
    }
  }
  return prune_unreachable(out);
}

struct IterationMetric {
  std::size_t iter = 0;
  std::uint64_t nodes = 0;
  std::uint64_t arcs = 0;
  std::uint64_t nodes_refined = 0;  // after refine, before filter
  std::uint64_t arcs_refined = 0;
  double eta_nodes = 0;
  double eta_arcs = 0;
  std::size_t sweeps = 0;
  bool cap_bound = false;
};

template <class Int>
struct IhmRun {
  LayeredDag<Int> graph;  // final graph (empty when no solutions survive)
  std::vector<IterationMetric> metrics;
  std::size_t rounds = 0;  // planned refine/filter rounds
  std::size_t k_peak = 0;
  double eta_peak = 0;
  bool cap_bound_any = false;
};

// Filter once, then `rounds` rounds of refine followed by filter. Row 0 of the
// metrics holds the full G0 sizes v0/e0 used as the eta denominators.
template <class Int>
IhmRun<Int> ihm_run(LayeredDag<Int> g, double v0, double e0, std::size_t rounds, std::size_t sweep_cap,
                    FilterMode mode = FilterMode::Exact) {
  IhmRun<Int> run;
  run.rounds = rounds;
  IterationMetric m0;
  m0.nodes = static_cast<std::uint64_t>(v0);
  m0.arcs = static_cast<std::uint64_t>(e0);
  m0.nodes_refined = g.node_count();
  m0.arcs_refined = g.arc_count();
  m0.eta_nodes = 1.0;
  m0.eta_arcs = 1.0;
  auto fr = filter(g, sweep_cap, mode);
  m0.sweeps = fr.sweeps;
  m0.cap_bound = fr.cap_bound;
  run.cap_bound_any = fr.cap_bound;
  run.metrics.push_back(m0);
  for (std::size_t i = 1; i <= rounds && !g.empty(); ++i) {
    g = refine(g);
    IterationMetric mi;
    mi.iter = i;
    mi.nodes_refined = g.node_count();
    mi.arcs_refined = g.arc_count();
    auto r = filter(g, sweep_cap, mode);
    mi.sweeps = r.sweeps;
    mi.cap_bound = r.cap_bound;
    run.cap_bound_any = run.cap_bound_any || r.cap_bound;
    mi.nodes = g.node_count();
    mi.arcs = g.arc_count();
    mi.eta_nodes = v0 > 0 ? static_cast<double>(mi.nodes) / v0 : 0.0;
    mi.eta_arcs = e0 > 0 ? static_cast<double>(mi.arcs) / e0 : 0.0;
    run.metrics.push_back(mi);
  }
  run.eta_peak = 0;
  for (const auto& m : run.metrics)
    if (m.eta_nodes > run.eta_peak) {
      run.eta_peak = m.eta_nodes;
      run.k_peak = m.iter;
    }
  run.graph = std::move(g);
  return run;
}

struct SolutionCount {
  BigInt n_sols = 0;     // zero paths ending at designated nodes
  BigInt zero_paths = 0;  // zero paths ending at any TRUE node
};

// Path counters: xi = 1 at every layer-0 node, summed along arcs.
template <class Int>
SolutionCount count_solutions(const LayeredDag<Int>& g) {
  SolutionCount sc;
  if (g.empty()) return sc;
  std::vector<BigInt> cur(g.layers[0].size(), 1), nxt;
  for (std::size_t li = 0; li < g.layers.size(); ++li) {
    const auto& L = g.layers[li];
    nxt.assign(li + 1 < g.layers.size() ? g.layers[li + 1].size() : 0, 0);
    for (std::uint32_t v = 0; v < L.size(); ++v) {
      if (cur[v].is_zero()) continue;
      if (L.flags[v] & kTrue) {
        sc.zero_paths += cur[v];
        if (L.flags[v] & kDesignated) sc.n_sols += cur[v];
      }
      if (li + 1 < g.layers.size())
        for (std::uint32_t a = L.out_begin[v]; a < L.out_begin[v + 1]; ++a) nxt[L.out_dst[a]] += cur[v];
    }
    cur.swap(nxt);
  }
  return sc;
}

struct Extraction {
  std::vector<BigInt> indices;  // internal (sorted-instance) indices, path order
  bool truncated = false;
};

// Depth-first enumeration of solution paths; the index of a path is the root
// node's lower-vertex index plus the dx sum along the path. Branches that
// reach no designated node are skipped.
template <class Int>
Extraction extract_indices(const LayeredDag<Int>& g, std::size_t cap) {
  Extraction ex;
  if (g.empty()) return ex;
  std::size_t nl = g.layers.size();
  std::vector<std::vector<char>> good(nl);
  for (std::size_t li = nl; li-- > 0;) {
    const auto& L = g.layers[li];
    good[li].assign(L.size(), 0);
    for (std::uint32_t v = 0; v < L.size(); ++v) {
      bool ok = (L.flags[v] & kTrue) && (L.flags[v] & kDesignated);
      if (!ok && li + 1 < nl)
        for (std::uint32_t a = L.out_begin[v]; a < L.out_begin[v + 1] && !ok; ++a) ok = good[li + 1][L.out_dst[a]];
      good[li][v] = ok;
    }
  }
  struct Frame {
    std::size_t li;
    std::uint32_t v;
    std::uint32_t next_arc;
    Int x;
  };
  for (std::uint32_t r = 0; r < g.layers[0].size(); ++r) {
    if (!good[0][r]) continue;
    std::vector<Frame> st;
    auto enter = [&](std::size_t li, std::uint32_t v, Int x) {
      const auto& L = g.layers[li];
      if ((L.flags[v] & kTrue) && (L.flags[v] & kDesignated)) {
        if (ex.indices.size() >= cap) {
          ex.truncated = true;
          return false;
        }
        ex.indices.push_back(to_big(x));
      }
      st.push_back({li, v, L.out_begin[v], std::move(x)});
      return true;
    };
    if (!enter(0, r, g.root_x[r])) return ex;
    while (!st.empty()) {
      Frame& f = st.back();
      const auto& L = g.layers[f.li];
      if (f.li + 1 >= nl || f.next_arc >= L.out_begin[f.v + 1]) {
        st.pop_back();
        continue;
      }
      std::uint32_t a = f.next_arc++;
      std::uint32_t d = L.out_dst[a];
      if (!good[f.li + 1][d]) continue;
      Int x = f.x + L.out_dx[a];
      if (!enter(f.li + 1, d, std::move(x))) return ex;
    }
  }
  return ex;
}

struct GmCheck {
  bool lengths_le_one = true;
  bool arcs_dy_zero = true;
  bool leaves_true = true;
  bool all_paths_zero = true;
  bool ok() const { return lengths_le_one && arcs_dy_zero && leaves_true && all_paths_zero; }
};

// Structural properties of a final graph; the path check propagates the set
// of reachable local-y values from the roots and requires it to be {0}
// everywhere.
template <class Int>
GmCheck check_final_graph(const LayeredDag<Int>& g) {
  GmCheck c;
  if (g.empty()) return c;
  std::size_t nl = g.layers.size();
  for (std::size_t li = 0; li < nl; ++li) {
    const auto& L = g.layers[li];
    for (std::uint32_t v = 0; v < L.size(); ++v) {
      if (L.len[v] > 1) c.lengths_le_one = false;
      bool leaf = li + 1 >= nl || L.out_begin[v] == L.out_begin[v + 1];
      if (leaf && !(L.flags[v] & kTrue)) c.leaves_true = false;
    }
    for (const Int& s : L.out_shift)
      if (s != 0) c.arcs_dy_zero = false;
  }
  std::vector<std::optional<Int>> val(g.layers[0].size());
  for (std::uint32_t r = 0; r < g.layers[0].size(); ++r) val[r] = g.root_y0[r];
  for (std::size_t li = 0; li < nl; ++li) {
    const auto& L = g.layers[li];
    std::vector<std::optional<Int>> nxt(li + 1 < nl ? g.layers[li + 1].size() : 0);
    for (std::uint32_t v = 0; v < L.size(); ++v) {
      if (!val[v]) {
        c.all_paths_zero = false;
        continue;
      }
      if (*val[v] != 0) c.all_paths_zero = false;
      if (li + 1 < nl)
        for (std::uint32_t a = L.out_begin[v]; a < L.out_begin[v + 1]; ++a) {
          Int y = *val[v] + L.out_shift[a];
          auto& t = nxt[L.out_dst[a]];
          if (t && *t != y) c.all_paths_zero = false;
          t = y;
        }
    }
    val.swap(nxt);
  }
  return c;
}

}  // namespace orbital_ssp

#endif  // ORBITAL_SSP_IHM_HPP
