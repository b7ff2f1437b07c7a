// Copyright 2026 The orbital-ssp authors.
// SPDX-License-Identifier: MIT
//
// The orbital graph G0: curve edges as nodes in local reference frames,
// interaction between edges of complementary curves, positional congruence
// across curve orders, root location on the orbital line, and the layered
// build (full, root-reachable, or restricted to window-consistent arcs).

#ifndef ORBITAL_SSP_ORBITAL_HPP
#define ORBITAL_SSP_ORBITAL_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "orbital_ssp/bigint.hpp"
#include "orbital_ssp/core.hpp"
#include "orbital_ssp/dag.hpp"
#include "orbital_ssp/ndp.hpp"

namespace orbital_ssp {

// Vertex coordinates and link slots of one curve in its own frame.
template <class Int>
struct Curve {
  std::vector<Int> x;
  std::vector<Int> y;
  std::vector<LinkSlot> slot;

  std::size_t edges() const { return slot.size(); }
  Int len(std::size_t i) const { return y[i + 1] - y[i]; }
};

// All curves p_1..p_n and q_1..q_n of an instance (index 0 unused).
template <class Int>
struct Geometry {
  std::size_t n = 0;
  std::vector<Curve<Int>> p, q;
  std::vector<Int> A;  // prefix sums A_0..A_n
  Int max_len{};       // largest edge length over all curves

  const Curve<Int>& curve(bool is_q, std::size_t k) const { return is_q ? q[k] : p[k]; }
};

template <class Int>
Geometry<Int> make_geometry(const Instance& inst) {
  Geometry<Int> g;
  g.n = inst.n;
  auto d = links(inst);
  std::vector<Int> dx(inst.n), dy(inst.n);
  for (std::size_t j = 0; j < inst.n; ++j) {
    dx[j] = from_big<Int>(d[j].dx);
    dy[j] = from_big<Int>(d[j].dy);
    if (dy[j] > g.max_len) g.max_len = dy[j];
  }
  for (const BigInt& v : inst.A) g.A.push_back(from_big<Int>(v));
  g.p.resize(inst.n + 1);
  g.q.resize(inst.n + 1);
  for (std::size_t k = 1; k <= inst.n; ++k) {
    for (CurveKind kind : {CurveKind::P, CurveKind::Q}) {
      Curve<Int>& c = kind == CurveKind::P ? g.p[k] : g.q[k];
      c.slot = curve_links(kind, k);
      c.x.reserve(c.slot.size() + 1);
      c.y.reserve(c.slot.size() + 1);
      Int x = 0, y = 0;
      c.x.push_back(x);
      c.y.push_back(y);
      for (const auto& s : c.slot) {
        x += dx[s.link - 1];
        y += dy[s.link - 1];
        c.x.push_back(x);
        c.y.push_back(y);
      }
    }
  }
  return g;
}

// Signed overlap min(hi) - max(lo) and the interaction verdict: positive-length
// edges interact when they share a half-open range; a zero-length edge is the
// point {lo} and interacts when it lies in the other edge or equals the other
// point.
struct Interaction {
  bool interacting = false;
  BigInt length = 0;
};

template <class Int>
bool edges_interact(const Int& lo1, const Int& hi1, const Int& lo2, const Int& hi2) {
  bool z1 = lo1 == hi1, z2 = lo2 == hi2;
  if (z1 && z2) return lo1 == lo2;
  if (z1) return lo2 <= lo1 && lo1 < hi2;
  if (z2) return lo1 <= lo2 && lo2 < hi1;
  return std::max(lo1, lo2) < std::min(hi1, hi2);
}

inline Interaction interacts(const BigInt& lo1, const BigInt& hi1, const BigInt& lo2,
                             const BigInt& hi2) {
  Interaction r;
  r.length = std::min(hi1, hi2) - std::max(lo1, lo2);
  r.interacting = edges_interact(lo1, hi1, lo2, hi2);
  return r;
}

// Edges f of a curve whose y-range meets the integer window [a, b], where a
// zero-length f counts as the point {y_f}: returns the half-open index range.
template <class Int>
std::pair<std::size_t, std::size_t> target_range(const Curve<Int>& c, const Int& a, const Int& b) {
  std::size_t E = c.edges();
  std::size_t lo = 0, hi = E;
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    if (c.y[mid + 1] > a || c.y[mid] >= a) hi = mid;
    else lo = mid + 1;
  }
  std::size_t first = lo;
  lo = first;
  hi = E;
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    if (c.y[mid] > b) hi = mid;
    else lo = mid + 1;
  }
  return {first, std::max(first, lo)};
}

// Edges of the complementary curve interacting with edge i of c (full edge).
template <class Int>
std::pair<std::size_t, std::size_t> interacting_range(const Curve<Int>& c, std::size_t i,
                                                      const Curve<Int>& other) {
  Int l = c.len(i);
  Int b = l == 0 ? c.y[i] : Int(c.y[i] + l - 1);
  return target_range(other, c.y[i], b);
}

// Edge i of p_k is congruent to edge i of p_u when i < u(u+1)/2; edge i of
// q_k is congruent to edge i - (k(k+1)/2 - u(u+1)/2) of q_u when that is >= 0.
inline std::optional<std::uint32_t> congruent_index(bool is_q, std::size_t k, std::uint64_t i,
                                                    std::size_t u) {
  if (u > k) return std::nullopt;
  if (!is_q) {
    if (i < tri(u)) return static_cast<std::uint32_t>(i);
    return std::nullopt;
  }
  std::uint64_t shift = tri(k) - tri(u);
  if (i >= shift) return static_cast<std::uint32_t>(i - shift);
  return std::nullopt;
}

struct PairArc {
  std::uint32_t p_edge = 0;
  std::uint32_t q_edge = 0;
  BigInt dx, dy;  // w = z_q^- - z_p^-
};

struct PairInteractions {
  std::size_t count = 0;
  std::vector<PairArc> arcs;
};

// All interacting (e in p_k, e' in q_k) pairs, by direct pairwise test.
inline PairInteractions pair_interactions(const Instance& inst, std::size_t k) {
  if (k < 1 || k > inst.n) throw InputError("curve order out of range");
  auto pp = curve_points(inst, CurveKind::P, k);
  auto qq = curve_points(inst, CurveKind::Q, k);
  PairInteractions r;
  for (std::size_t i = 0; i + 1 < pp.size(); ++i)
    for (std::size_t j = 0; j + 1 < qq.size(); ++j)
      if (edges_interact(pp[i].y, pp[i + 1].y, qq[j].y, qq[j + 1].y)) {
        ++r.count;
        r.arcs.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j),
                          qq[j].x - pp[i].x, qq[j].y - pp[i].y});
      }
  return r;
}

// J_k laws: k^2 + k - 5 for dissociated sets, (k^3 + 6k^2 - k)/6 for CP.
inline std::size_t j_dissociated(std::size_t k) { return k * k + k - 5; }
inline std::size_t j_constant(std::size_t k) { return (k * k * k + 6 * k * k - k) / 6; }

struct CollatedEntry {
  std::size_t u = 0;      // curve order of the partner pair
  std::uint32_t src = 0;  // congruent edge index on curve u
  std::uint32_t dst = 0;  // partner edge index on the complementary curve u
  BigInt dx, dy;          // w = z_dst^- - z_src^-
};

// Collated adjacency list of edge i of (kind, k): the union over u <= k of
// the interaction lists of its congruent edge on curve u. The u == k part is
// the raw list.
inline std::vector<CollatedEntry> collate(const Instance& inst, CurveKind kind, std::size_t k,
                                          std::uint64_t i) {
  if (k < 1 || k > inst.n) throw InputError("curve order out of range");
  if (i >= tri(k)) throw InputError("edge index out of range");
  auto g = make_geometry<BigInt>(inst);
  bool is_q = kind == CurveKind::Q;
  std::vector<CollatedEntry> out;
  for (std::size_t u = 1; u <= k; ++u) {
    auto iu = congruent_index(is_q, k, i, u);
    if (!iu) continue;
    const auto& c = g.curve(is_q, u);
    const auto& o = g.curve(!is_q, u);
    auto [f0, f1] = interacting_range(c, *iu, o);
    for (std::size_t f = f0; f < f1; ++f)
      out.push_back({u, *iu, static_cast<std::uint32_t>(f), o.x[f] - c.x[*iu], o.y[f] - c.y[*iu]});
  }
  return out;
}

// A root node on p_n: the edge index and the local start value. The edge
// index equals the edge count for the top vertex (T = A_n).
template <class Int>
struct RootEdge {
  std::uint32_t edge = 0;
  Int y0{};
};

template <class Int>
std::vector<RootEdge<Int>> find_root(const Geometry<Int>& g, const Int& T) {
  if (T <= 0 || T > g.A[g.n]) throw InputError("target out of range");
  const Curve<Int>& c = g.p[g.n];
  std::vector<RootEdge<Int>> roots;
  if (T == g.A[g.n]) {
    roots.push_back({static_cast<std::uint32_t>(c.edges()), Int(0)});
    return roots;
  }
  auto [f0, f1] = target_range(c, T, T);
  for (std::size_t f = f0; f < f1; ++f) {
    roots.push_back({static_cast<std::uint32_t>(f), Int(T - c.y[f])});
  }
  return roots;
}

// Layer l >= 1 holds curves of order 1..n+1-l; q curves on odd layers.
inline bool layer_is_q(std::size_t level) { return level % 2 == 1; }
inline std::size_t layer_max_order(std::size_t n, std::size_t level) { return n + 1 - level; }
// Number of edges on curves 1..u-1: C(u+1, 3).
inline std::size_t dense_base(std::size_t u) { return (u + 1) * u * (u - 1) / 6; }

template <class Int>
std::uint8_t edge_flags(const Curve<Int>& c, bool is_q, std::uint32_t e) {
  std::uint8_t f = kTrue;
  if (is_q) f |= kTypeQ;
  else if (e >= c.edges() || c.slot[e].instance == 1) f |= kDesignated;
  return f;
}

struct G0Stats {
  BigInt full_nodes = 0;
  BigInt full_arcs = 0;
  std::size_t roots = 0;
};

// Arc count of the full G0 (positive-length sources only), from per-curve
// interaction totals.
template <class Int>
BigInt full_arc_count(const Geometry<Int>& g, const std::vector<RootEdge<Int>>& roots) {
  std::size_t n = g.n;
  std::vector<BigInt> S_p(n + 1, 0), S_q(n + 1, 0);
  for (std::size_t u = 1; u <= n; ++u) {
    for (bool is_q : {false, true}) {
      const auto& c = g.curve(is_q, u);
      const auto& o = g.curve(!is_q, u);
      std::uint64_t s = 0;
      for (std::size_t i = 0; i < c.edges(); ++i) {
        if (c.len(i) == 0) continue;
        auto [f0, f1] = interacting_range(c, i, o);
        s += f1 - f0;
      }
      (is_q ? S_q : S_p)[u] = s;
    }
  }
  BigInt total = 0;
  const auto& top = g.p[n];
  for (const auto& r : roots) {
    if (r.edge >= top.edges() || top.len(r.edge) == 0) continue;
    for (std::size_t u = 1; u <= n; ++u) {
      auto iu = congruent_index(false, n, r.edge, u);
      if (!iu) continue;
      auto [f0, f1] = interacting_range(g.p[u], *iu, g.q[u]);
      total += f1 - f0;
    }
  }
  for (std::size_t level = 1; level < n; ++level) {
    bool is_q = layer_is_q(level);
    const auto& S = is_q ? S_q : S_p;
    BigInt prefix = 0;  // sum_{u<k} S[u]
    for (std::size_t k = 1; k <= layer_max_order(n, level); ++k) {
      total += prefix;
      prefix += S[k];
    }
  }
  return total;
}

enum class BuildMode {
  Full,       // every edge of every layer is a node
  Reachable,  // only nodes reachable from the root
  Windowed,   // only nodes reachable through arcs consistent with clipped local windows
};

// Builds G0: arcs join every positive-length source to the interacting edges
// of the complementary curve of each admissible lower order.
template <class Int>
LayeredDag<Int> build_g0(const Geometry<Int>& g, const Int& T, BuildMode mode, G0Stats* stats = nullptr) {
  bool pruned = mode != BuildMode::Full;
  bool windowed = mode == BuildMode::Windowed;
  std::size_t n = g.n;
  auto roots = find_root(g, T);
  LayeredDag<Int> dag;
  dag.layers.resize(n + 1);
  std::vector<Window<Int>> win;  // windows of the current layer
  {
    auto& L0 = dag.layers[0];
    const auto& top = g.p[n];
    for (const auto& r : roots) {
      Int len = r.edge < top.edges() ? top.len(r.edge) : Int(0);
      L0.add_node(static_cast<std::uint16_t>(n), r.edge, Int(0), len, edge_flags(top, false, r.edge));
      dag.root_y0.push_back(r.y0);
      dag.root_x.push_back(top.x[r.edge]);
      win.push_back(windowed ? Window<Int>::of(r.y0, r.y0) : node_range(len));
    }
  }
  for (std::size_t level = 0; level < n; ++level) {
    auto& L = dag.layers[level];
    auto& Nx = dag.layers[level + 1];
    bool src_q = level == 0 ? false : layer_is_q(level);
    bool dst_q = layer_is_q(level + 1);
    std::size_t K = layer_max_order(n, level + 1);
    std::size_t cap = dense_base(K + 1);
    std::vector<std::int64_t> id(cap, -1);
    std::vector<Window<Int>> next_win;
    if (!pruned) {
      next_win.resize(cap);
      for (std::size_t u = 1; u <= K; ++u) {
        const auto& c = g.curve(dst_q, u);
        for (std::uint32_t e = 0; e < c.edges(); ++e) {
          id[dense_base(u) + e] = Nx.add_node(static_cast<std::uint16_t>(u), e, Int(0), c.len(e),
                                              edge_flags(c, dst_q, e));
        }
      }
    }
    for (std::uint32_t v = 0; v < L.size(); ++v) {
      std::size_t k = L.curve[v];
      std::uint32_t i = L.edge[v];
      const Int& len = L.len[v];
      if (len > 0 && win[v].has) {
        std::size_t umax = level == 0 ? k : k - 1;
        for (std::size_t u = 1; u <= umax; ++u) {
          auto iu = congruent_index(src_q, k, i, u);
          if (!iu) continue;
          const auto& cu = g.curve(src_q, u);
          const auto& o = g.curve(dst_q, u);
          Int Y = cu.y[*iu];
          Int X = cu.x[*iu];
          Int a = windowed ? Int(Y + win[v].lo) : Y;
          Int b = windowed ? Int(Y + win[v].hi) : Int(Y + len - 1);
          auto [f0, f1] = target_range(o, a, b);
          for (std::size_t f = f0; f < f1; ++f) {
            std::size_t key = dense_base(u) + f;
            if (id[key] < 0) {
              id[key] = Nx.add_node(static_cast<std::uint16_t>(u), static_cast<std::uint32_t>(f), Int(0),
                                    o.len(f), edge_flags(o, dst_q, static_cast<std::uint32_t>(f)));
              next_win.push_back(windowed ? Window<Int>{} : node_range(o.len(f)));
            }
            Int shift = Y - o.y[f];
            if (windowed) {
              Window<Int> w = Window<Int>::of(Int(win[v].lo + shift), Int(win[v].hi + shift))
                                  .intersect(node_range(o.len(f)));
              if (w.has) next_win[static_cast<std::size_t>(id[key])].hull(w.lo, w.hi);
            }
            L.add_arc(static_cast<std::uint32_t>(id[key]), shift, Int(o.x[f] - X));
          }
        }
      }
      L.close_node();
    }
    if (!pruned) {
      next_win.assign(Nx.size(), Window<Int>{});
      for (std::uint32_t v = 0; v < Nx.size(); ++v) next_win[v] = node_range(Nx.len[v]);
    }
    win = std::move(next_win);
  }
  for (std::size_t v = 0; v < dag.layers[n].size(); ++v) dag.layers[n].close_node();
  while (!dag.layers.empty() && dag.layers.back().size() == 0) dag.layers.pop_back();
  if (stats) {
    stats->roots = roots.size();
    stats->full_nodes = BigInt(roots.size()) + binomial(n + 3, 4);
    stats->full_arcs = full_arc_count(g, roots);
  }
  return dag;
}

// Number of arcs the destination collector adds: one per TRUE node.
template <class Int>
std::size_t destination_arc_count(const LayeredDag<Int>& g) {
  std::size_t c = 0;
  for (const auto& L : g.layers)
    for (std::uint8_t f : L.flags) c += (f & kTrue) ? 1 : 0;
  return c;
}

// Identity of a node: (level, type, link, curve order, instance number).
struct FiveTuple {
  std::size_t level = 0;
  char type = 'p';
  std::size_t link = 0;
  std::size_t curve = 0;
  std::size_t instance = 0;
};

template <class Int>
FiveTuple five_tuple(const Geometry<Int>& g, std::size_t level, std::uint8_t flags, std::size_t k,
                     std::uint32_t e) {
  bool is_q = flags & kTypeQ;
  const auto& c = g.curve(is_q, k);
  FiveTuple t;
  t.level = level;
  t.type = is_q ? 'q' : 'p';
  t.curve = k;
  if (e < c.edges()) {
    t.link = c.slot[e].link;
    t.instance = c.slot[e].instance;
  }
  return t;
}

// JSON lines: one object per node, then one per arc. Node coordinates are in
// the node's curve frame; arc dy is the stored weight (target lower y minus
// source lower y), so the local y change along the arc is -dy.
template <class Int>
void dump_graph(std::ostream& os, const Geometry<Int>& g, const LayeredDag<Int>& dag) {
  for (std::size_t li = 0; li < dag.layers.size(); ++li) {
    const auto& L = dag.layers[li];
    for (std::uint32_t v = 0; v < L.size(); ++v) {
      bool is_q = L.flags[v] & kTypeQ;
      const auto& c = g.curve(is_q, L.curve[v]);
      auto t = five_tuple(g, li, L.flags[v], L.curve[v], L.edge[v]);
      Int ylo = c.y[L.edge[v]] + L.off[v];
      Int xhi = L.edge[v] < c.edges() ? c.x[L.edge[v] + 1] : c.x[L.edge[v]];
      nlohmann::json j;
      j["kind"] = "node";
      j["level"] = li;
      j["index"] = v;
      j["id"] = {t.level, std::string(1, t.type), t.link, t.curve, t.instance};
      j["offset"] = to_dec(L.off[v]);
      j["lo"] = {to_dec(c.x[L.edge[v]]), to_dec(ylo)};
      j["hi"] = {to_dec(L.len[v] == 0 ? c.x[L.edge[v]] : xhi), to_dec(Int(ylo + L.len[v]))};
      j["length"] = to_dec(L.len[v]);
      j["truth"] = (L.flags[v] & kTrue) != 0;
      j["designated"] = (L.flags[v] & kDesignated) != 0;
      if (li == 0) {
        j["y0"] = to_dec(dag.root_y0[v]);
        j["x0"] = to_dec(dag.root_x[v]);
      }
      os << j.dump() << '\n';
    }
  }
  for (std::size_t li = 0; li < dag.layers.size(); ++li) {
    const auto& L = dag.layers[li];
    for (std::uint32_t v = 0; v < L.size(); ++v)
      for (std::uint32_t a = L.out_begin[v]; a < L.out_begin[v + 1]; ++a) {
        nlohmann::json j;
        j["kind"] = "arc";
        j["src"] = {li, v};
        j["dst"] = {li + 1, L.out_dst[a]};
        j["dx"] = to_dec(L.out_dx[a]);
        j["dy"] = to_dec(Int(-L.out_shift[a]));
        os << j.dump() << '\n';
      }
  }
}

}  // namespace orbital_ssp

#endif  // ORBITAL_SSP_ORBITAL_HPP
