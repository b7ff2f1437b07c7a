// Copyright 2026 The orbital-ssp authors.
// SPDX-License-Identifier: MIT
//
// Layered DAG storage shared by the orbital-graph builder and the iterative
// refine/filter engine. Nodes live in layers; arcs connect a layer to the
// next one and are stored in CSR form per source layer.

#ifndef ORBITAL_SSP_DAG_HPP
#define ORBITAL_SSP_DAG_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace orbital_ssp {

enum NodeFlag : std::uint8_t {
  kTrue = 1,        // lower vertex is a power-set point
  kDesignated = 2,  // a zero path ending here is counted as a solution
  kTypeQ = 4,       // lies on a q curve (p otherwise)
};

// Closed integer window [lo, hi]; empty when has == false.
template <class Int>
struct Window {
  bool has = false;
  Int lo{};
  Int hi{};

  static Window of(const Int& a, const Int& b) {
    Window w;
    w.has = a <= b;
    w.lo = a;
    w.hi = b;
    return w;
  }
  void hull(const Int& a, const Int& b) {
    if (!has) {
      has = true;
      lo = a;
      hi = b;
      return;
    }
    if (a < lo) lo = a;
    if (b > hi) hi = b;
  }
  Window intersect(const Window& o) const {
    if (!has || !o.has) return {};
    return of(std::max(lo, o.lo), std::min(hi, o.hi));
  }
  bool contains(const Int& v) const { return has && lo <= v && v <= hi; }
};

// The admissible local window of a node: [0, len-1], or {0} when len == 0.
template <class Int>
Window<Int> node_range(const Int& len) {
  return len == 0 ? Window<Int>::of(Int(0), Int(0)) : Window<Int>::of(Int(0), Int(len - 1));
}

template <class Int>
struct Layer {
  // Node columns.
  std::vector<std::uint16_t> curve;  // curve order k
  std::vector<std::uint32_t> edge;   // edge index within the curve
  std::vector<Int> off;              // offset of the node inside its edge
  std::vector<Int> len;              // node length
  std::vector<std::uint8_t> flags;
  // Arcs to the next layer, CSR by source node.
  std::vector<std::uint32_t> out_begin{0};
  std::vector<std::uint32_t> out_dst;
  std::vector<Int> out_shift;  // local y at target = local y at source + shift
  std::vector<Int> out_dx;     // index increment along the arc

  std::size_t size() const { return len.size(); }
  std::size_t arc_count() const { return out_dst.size(); }

  std::uint32_t add_node(std::uint16_t k, std::uint32_t e, Int o, Int l, std::uint8_t f) {
    curve.push_back(k);
    edge.push_back(e);
    off.push_back(std::move(o));
    len.push_back(std::move(l));
    flags.push_back(f);
    return static_cast<std::uint32_t>(len.size() - 1);
  }
  void add_arc(std::uint32_t dst, Int shift, Int dx) {
    out_dst.push_back(dst);
    out_shift.push_back(std::move(shift));
    out_dx.push_back(std::move(dx));
  }
  // Closes the arc list of the next source node (call once per node in order).
  void close_node() { out_begin.push_back(static_cast<std::uint32_t>(out_dst.size())); }
  void reserve_nodes(std::size_t n) {
    curve.reserve(n);
    edge.reserve(n);
    off.reserve(n);
    len.reserve(n);
    flags.reserve(n);
    out_begin.reserve(n + 1);
  }
};

template <class Int>
struct LayeredDag {
  std::vector<Layer<Int>> layers;
  std::vector<Int> root_y0;  // start value of each layer-0 node
  std::vector<Int> root_x;   // index of each layer-0 node's lower vertex

  std::size_t node_count() const {
    std::size_t s = 0;
    for (const auto& l : layers) s += l.size();
    return s;
  }
  std::size_t arc_count() const {
    std::size_t s = 0;
    for (const auto& l : layers) s += l.arc_count();
    return s;
  }
  bool empty() const { return layers.empty() || layers[0].size() == 0; }

  // Throws when arcs are not in CSR shape or point outside the next layer.
  void validate() const {
    for (std::size_t li = 0; li < layers.size(); ++li) {
      const auto& L = layers[li];
      if (L.out_begin.size() != L.size() + 1) throw std::logic_error("layer CSR size mismatch");
      std::size_t next = li + 1 < layers.size() ? layers[li + 1].size() : 0;
      for (std::uint32_t d : L.out_dst)
        if (d >= next) throw std::logic_error("arc leaves the next layer");
    }
    if (!layers.empty() && root_y0.size() != layers[0].size())
      throw std::logic_error("root value count mismatch");
  }
};

// Level-major order: (layer, node) pairs in which every arc points forward.
template <class Int>
std::vector<std::pair<std::size_t, std::uint32_t>> topo_order(const LayeredDag<Int>& g) {
  g.validate();
  std::vector<std::pair<std::size_t, std::uint32_t>> order;
  order.reserve(g.node_count());
  for (std::size_t li = 0; li < g.layers.size(); ++li)
    for (std::uint32_t v = 0; v < g.layers[li].size(); ++v) order.emplace_back(li, v);
  return order;
}

// Keeps nodes with node_keep set and arcs with arc_keep set whose endpoints
// survive; trailing empty layers are dropped.
template <class Int>
LayeredDag<Int> compact(const LayeredDag<Int>& g, const std::vector<std::vector<char>>& node_keep,
                        const std::vector<std::vector<char>>* arc_keep) {
  LayeredDag<Int> out;
  std::vector<std::vector<std::int64_t>> remap(g.layers.size());
  for (std::size_t li = 0; li < g.layers.size(); ++li) {
    const auto& L = g.layers[li];
    remap[li].assign(L.size(), -1);
    std::int64_t c = 0;
    for (std::uint32_t v = 0; v < L.size(); ++v)
      if (node_keep[li][v]) remap[li][v] = c++;
  }
  out.layers.resize(g.layers.size());
  for (std::size_t li = 0; li < g.layers.size(); ++li) {
    const auto& L = g.layers[li];
    auto& N = out.layers[li];
    for (std::uint32_t v = 0; v < L.size(); ++v) {
      if (remap[li][v] < 0) continue;
      N.add_node(L.curve[v], L.edge[v], L.off[v], L.len[v], L.flags[v]);
      if (li == 0) {
        out.root_y0.push_back(g.root_y0[v]);
        out.root_x.push_back(g.root_x[v]);
      }
      if (li + 1 < g.layers.size()) {
        for (std::uint32_t a = L.out_begin[v]; a < L.out_begin[v + 1]; ++a) {
          if (arc_keep && !(*arc_keep)[li][a]) continue;
          std::int64_t d = remap[li + 1][L.out_dst[a]];
          if (d < 0) continue;
          N.add_arc(static_cast<std::uint32_t>(d), L.out_shift[a], L.out_dx[a]);
        }
      }
      N.close_node();
    }
  }
  while (!out.layers.empty() && out.layers.back().size() == 0) out.layers.pop_back();
  return out;
}

// Removes nodes not reachable from layer 0.
template <class Int>
LayeredDag<Int> prune_unreachable(const LayeredDag<Int>& g) {
  std::vector<std::vector<char>> keep(g.layers.size());
  for (std::size_t li = 0; li < g.layers.size(); ++li) keep[li].assign(g.layers[li].size(), li == 0);
  for (std::size_t li = 0; li + 1 < g.layers.size(); ++li) {
    const auto& L = g.layers[li];
    for (std::uint32_t v = 0; v < L.size(); ++v) {
      if (!keep[li][v]) continue;
      for (std::uint32_t a = L.out_begin[v]; a < L.out_begin[v + 1]; ++a) keep[li + 1][L.out_dst[a]] = 1;
    }
  }
  return compact(g, keep, nullptr);
}

}  // namespace orbital_ssp

#endif  // ORBITAL_SSP_DAG_HPP
