// Copyright 2026 The orbital-ssp authors.
// SPDX-License-Identifier: MIT
//
// Non-decreasing paths: the closed-form index sequences phi/varphi, the
// box-filling simulation, curves p_j/q_j, chains of elemental blocks and the
// lambda/rho/tau transform algebra, the NDP family and its coverage/segments.

#ifndef ORBITAL_SSP_NDP_HPP
#define ORBITAL_SSP_NDP_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "orbital_ssp/bigint.hpp"
#include "orbital_ssp/core.hpp"

namespace orbital_ssp {

// k(k+1)/2.
constexpr std::uint64_t tri(std::uint64_t k) { return k * (k + 1) / 2; }

// Integer square root by Newton iteration.
inline std::uint64_t isqrt(std::uint64_t v) {
  if (v < 2) return v;
  std::uint64_t x = v;
  std::uint64_t y = (x + 1) / 2;
  while (y < x) {
    x = y;
    y = (x + v / x) / 2;
  }
  return x;
}

// theta(k) = floor((-1 + sqrt(1 + 8k)) / 2): the largest t with t(t+1)/2 <= k.
inline std::uint64_t theta(std::uint64_t k) {
  std::uint64_t t = (isqrt(1 + 8 * k) - 1) / 2;
  while (tri(t + 1) <= k) ++t;
  while (tri(t) > k) --t;
  return t;
}

enum class CurveKind { P, Q };

inline char kind_char(CurveKind k) { return k == CurveKind::P ? 'p' : 'q'; }

// phi(k) for machine or big integers; the value does not depend on n.
template <class Int = BigInt>
Int phi_value(std::uint64_t k) {
  std::uint64_t t = theta(k);
  std::uint64_t e = t - (k - tri(t));
  Int one = 1;
  return (one << static_cast<unsigned>(1 + t)) - (one << static_cast<unsigned>(e)) - 1;
}

// phi_n(k), 0 <= k <= n(n+1)/2.
inline BigInt phi(std::size_t n, std::uint64_t k) {
  if (k > tri(n)) throw InputError("phi: k out of range");
  return phi_value<BigInt>(k);
}

// varphi_n(k) = 2^n - 1 - phi_n(n(n+1)/2 - k).
inline BigInt varphi(std::size_t n, std::uint64_t k) {
  if (k > tri(n)) throw InputError("varphi: k out of range");
  return pow2(n) - 1 - phi_value<BigInt>(tri(n) - k);
}

// The full index sequence of p_n or q_n.
inline std::vector<BigInt> index_sequence(CurveKind kind, std::size_t n) {
  std::vector<BigInt> v;
  v.reserve(tri(n) + 1);
  for (std::uint64_t k = 0; k <= tri(n); ++k)
    v.push_back(kind == CurveKind::P ? phi(n, k) : varphi(n, k));
  return v;
}

enum class FillRule { LB, HB };

// Box filling: n boxes, balls enter box 1 from a bag and move one box up when
// the next box is empty. LB moves the lowest movable ball, HB the highest.
// Returns the n(n+1)/2 + 1 states as indices (box u is bit u-1).
inline std::vector<BigInt> lb_hb_simulate(std::size_t n, FillRule rule) {
  std::vector<char> box(n + 1, 0);  // box[0] is the bag
  std::vector<BigInt> states;
  auto state = [&] {
    BigInt s = 0;
    for (std::size_t u = 1; u <= n; ++u)
      if (box[u]) boost::multiprecision::bit_set(s, static_cast<unsigned>(u - 1));
    return s;
  };
  std::size_t in_bag = n;
  states.push_back(state());
  for (;;) {
    auto movable = [&](std::size_t u) {
      bool has = u == 0 ? in_bag > 0 : box[u] != 0;
      return has && u + 1 <= n && !box[u + 1];
    };
    std::size_t pick = n + 1;
    if (rule == FillRule::LB) {
      for (std::size_t u = 0; u < n && pick > n; ++u)
        if (movable(u)) pick = u;
    } else {
      for (std::size_t u = n; u-- > 0 && pick > n;)
        if (movable(u)) pick = u;
    }
    if (pick > n) break;
    if (pick == 0) --in_bag;
    else box[pick] = 0;
    box[pick + 1] = 1;
    states.push_back(state());
  }
  return states;
}

// One link occurrence of a curve's chain: link order j (1-based) and its
// occurrence number within the chain (1-based, left to right).
struct LinkSlot {
  std::uint16_t link;
  std::uint16_t instance;
};

// Link sequence of p_k (blocks reversed-c_1 .. reversed-c_k) or q_k
// (blocks c_k .. c_1), each slot tagged with its occurrence number.
inline std::vector<LinkSlot> curve_links(CurveKind kind, std::size_t k) {
  std::vector<LinkSlot> s;
  s.reserve(tri(k));
  if (kind == CurveKind::P) {
    for (std::size_t b = 1; b <= k; ++b)
      for (std::size_t j = b; j >= 1; --j)
        s.push_back({static_cast<std::uint16_t>(j), static_cast<std::uint16_t>(b - j + 1)});
  } else {
    for (std::size_t b = k; b >= 1; --b)
      for (std::size_t j = 1; j <= b; ++j)
        s.push_back({static_cast<std::uint16_t>(j), static_cast<std::uint16_t>(k - b + 1)});
  }
  return s;
}

// Vertex points of p_j or q_j for the instance.
inline std::vector<Point<BigInt>> curve_points(const Instance& inst, CurveKind kind,
                                               std::size_t j) {
  if (j < 1 || j > inst.n) throw InputError("curve order out of range");
  auto d = links(inst);
  std::vector<Point<BigInt>> pts;
  pts.reserve(tri(j) + 1);
  Point<BigInt> cur{0, 0};
  pts.push_back(cur);
  for (const auto& s : curve_links(kind, j)) {
    cur.x += d[s.link - 1].dx;
    cur.y += d[s.link - 1].dy;
    pts.push_back(cur);
  }
  return pts;
}

// An elemental block: c_order (forward) or its reversal.
struct Block {
  std::uint16_t order = 0;
  bool reversed = false;
  // Provenance for display: the curve this block was created in and its
  // 1-based position there.
  char src_kind = 'q';
  std::uint16_t src_order = 0;
  std::uint16_t src_pos = 0;
  bool operator==(const Block& o) const { return order == o.order && reversed == o.reversed; }
};

// A chain: run of elemental blocks plus an active region [lo, hi] of block
// positions (0-based, inclusive).
struct Chain {
  std::size_t n = 0;
  std::vector<Block> blocks;
  std::size_t lo = 0;
  std::size_t hi = 0;

  std::size_t active_order() const { return hi - lo + 1; }
};

// d_p_n = reversed c_1 + ... + reversed c_n; d_q_n = c_n + ... + c_1.
inline Chain chain_of(CurveKind kind, std::size_t n) {
  if (n < 1) throw InputError("chain order must be positive");
  Chain c;
  c.n = n;
  for (std::size_t i = 0; i < n; ++i) {
    Block b;
    b.order = static_cast<std::uint16_t>(kind == CurveKind::P ? i + 1 : n - i);
    b.reversed = kind == CurveKind::P;
    b.src_kind = kind_char(kind);
    b.src_order = static_cast<std::uint16_t>(n);
    b.src_pos = static_cast<std::uint16_t>(i + 1);
    c.blocks.push_back(b);
  }
  c.lo = 0;
  c.hi = n - 1;
  return c;
}

// Type of the active region determined from the blocks themselves: P when it
// reads reversed c_1..c_K, Q when it reads c_K..c_1; throws otherwise.
inline CurveKind active_kind(const Chain& c) {
  std::size_t K = c.active_order();
  bool is_p = true, is_q = true;
  for (std::size_t t = 0; t < K; ++t) {
    const Block& b = c.blocks[c.lo + t];
    if (!(b.reversed && b.order == t + 1)) is_p = false;
    if (!(!b.reversed && b.order == K - t)) is_q = false;
  }
  if (is_p) return CurveKind::P;
  if (is_q) return CurveKind::Q;
  throw InputError("active region is neither a p nor a q curve");
}

enum class TransformOp { Lambda, Rho, Tau };

struct TransformStep {
  TransformOp op = TransformOp::Tau;
  std::size_t k = 0;
};

// Applies lambda_k, rho or tau_k = rho o lambda_k to the active region.
inline Chain apply_transform(const Chain& in, TransformStep step) {
  Chain c = in;
  CurveKind kind = active_kind(c);
  if (step.op != TransformOp::Rho) {
    if (step.k < 1 || step.k > c.active_order())
      throw InputError("character " + std::to_string(step.k) + " outside the active region");
    if (kind == CurveKind::P) c.hi = c.lo + step.k - 1;
    else c.lo = c.hi + 1 - step.k;
  }
  if (step.op != TransformOp::Lambda) {
    std::reverse(c.blocks.begin() + static_cast<std::ptrdiff_t>(c.lo),
                 c.blocks.begin() + static_cast<std::ptrdiff_t>(c.hi + 1));
    CurveKind nk = kind == CurveKind::P ? CurveKind::Q : CurveKind::P;
    std::size_t K = c.active_order();
    for (std::size_t t = 0; t < K; ++t) {
      Block& b = c.blocks[c.lo + t];
      b.reversed = !b.reversed;
      b.src_kind = kind_char(nk);
      b.src_order = static_cast<std::uint16_t>(K);
      b.src_pos = static_cast<std::uint16_t>(t + 1);
    }
  }
  return c;
}

// Applies tau_{k_1}, tau_{k_2}, ... in order.
inline Chain apply_taus(Chain c, const std::vector<std::size_t>& ks) {
  for (std::size_t k : ks) c = apply_transform(c, {TransformOp::Tau, k});
  return c;
}

// Expanded link orders of a chain.
inline std::vector<std::uint16_t> expand_links(const Chain& c) {
  std::vector<std::uint16_t> out;
  out.reserve(tri(c.n));
  for (const Block& b : c.blocks) {
    if (b.reversed)
      for (std::size_t j = b.order; j >= 1; --j) out.push_back(static_cast<std::uint16_t>(j));
    else
      for (std::size_t j = 1; j <= b.order; ++j) out.push_back(static_cast<std::uint16_t>(j));
  }
  return out;
}

// Vertex indices of the chain's curve starting at index 0 (n <= 63).
inline std::vector<std::uint64_t> vertex_indices(const Chain& c) {
  if (c.n > 63) throw GuardError("vertex_indices requires n <= 63");
  std::vector<std::uint64_t> v{0};
  std::uint64_t x = 0;
  for (std::uint16_t j : expand_links(c)) {
    x += j == 1 ? 1 : (std::uint64_t{1} << (j - 2));
    v.push_back(x);
  }
  return v;
}

// Block notation, e.g. "c7⊕c6⊕c5⊕ĉ1⊕ĉ2⊕ĉ3⊕ĉ4".
inline std::string blocks_string(const Chain& c) {
  std::string s;
  for (std::size_t i = 0; i < c.blocks.size(); ++i) {
    if (i) s += "⊕";
    s += c.blocks[i].reversed ? "ĉ" : "c";
    s += std::to_string(c.blocks[i].order);
  }
  return s;
}

// Provenance notation grouping blocks by the curve that produced them, e.g.
// "q9[1,1]⊕q5⊕p8[6,8]".
inline std::string provenance_string(const Chain& c) {
  std::string s;
  std::size_t i = 0;
  while (i < c.blocks.size()) {
    const Block& b = c.blocks[i];
    std::size_t j = i + 1;
    while (j < c.blocks.size() && c.blocks[j].src_kind == b.src_kind &&
           c.blocks[j].src_order == b.src_order &&
           c.blocks[j].src_pos == c.blocks[j - 1].src_pos + 1)
      ++j;
    if (!s.empty()) s += "⊕";
    s += b.src_kind;
    s += std::to_string(b.src_order);
    std::size_t first = b.src_pos, last = c.blocks[j - 1].src_pos;
    if (!(first == 1 && last == b.src_order))
      s += "[" + std::to_string(first) + "," + std::to_string(last) + "]";
    i = j;
  }
  return s;
}

// Transformation vector of a point: index(K) = sum |x_{i+1} - x_i| b_i with
// x_{n+1} = 1 for a q_n start and 0 for a p_n start; taus listed high to low.
struct TransformVector {
  BigInt index;
  std::vector<std::size_t> taus;
};

inline TransformVector transformation_vector(const BigInt& x, std::size_t n, CurveKind start) {
  if (x < 0 || x >= pow2(n)) throw InputError("point index out of range");
  TransformVector tv;
  tv.index = 0;
  auto bit = [&](std::size_t i) {
    if (i == n + 1) return start == CurveKind::Q;
    return boost::multiprecision::bit_test(x, static_cast<unsigned>(i - 1));
  };
  for (std::size_t i = n; i >= 1; --i) {
    if (bit(i + 1) != bit(i)) {
      boost::multiprecision::bit_set(tv.index, static_cast<unsigned>(i - 1));
      tv.taus.push_back(i);
    }
  }
  return tv;
}

// The NDP family generated from p_n by tau transforms with characters >= 4,
// deduplicated by expanded link sequence.
inline std::vector<Chain> enumerate_ndps(std::size_t n) {
  if (n < 4 || n > 14) throw GuardError("enumerate_ndps requires 4 <= n <= 14");
  std::vector<Chain> out;
  std::set<std::vector<std::uint16_t>> seen;
  std::size_t chars = n - 3;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << chars); ++mask) {
    std::vector<std::size_t> ks;
    for (std::size_t t = chars; t-- > 0;)
      if (mask >> t & 1) ks.push_back(t + 4);
    Chain c = apply_taus(chain_of(CurveKind::P, n), ks);
    if (seen.insert(expand_links(c)).second) out.push_back(std::move(c));
  }
  return out;
}

// Union of vertex indices of a family compared against S_n.
struct CoverageReport {
  bool covered = false;
  std::vector<std::uint64_t> missing;
};

inline CoverageReport coverage_check(std::size_t n, const std::vector<Chain>& family) {
  if (n > 20) throw GuardError("coverage_check requires n <= 20");
  std::vector<char> hit(std::size_t{1} << n, 0);
  for (const Chain& c : family)
    for (std::uint64_t x : vertex_indices(c)) hit[x] = 1;
  CoverageReport r;
  for (std::uint64_t x = 0; x < hit.size(); ++x)
    if (!hit[x]) r.missing.push_back(x);
  r.covered = r.missing.empty();
  return r;
}

// Segment statistics of a family: number of distinct segments (consecutive
// vertex pairs) and, for a target, multiplicities of the segments crossing
// the line y = T ordered left to right by crossing abscissa.
struct SegmentCrossing {
  std::uint64_t x1 = 0, x2 = 0;
  std::size_t multiplicity = 0;
};

struct SegmentStats {
  std::size_t unique_segments = 0;
  std::vector<SegmentCrossing> crossings;
  std::size_t multiplicity_sum = 0;
};

inline SegmentStats segment_stats(const Instance* inst, const std::vector<Chain>& family,
                                  const BigInt* T = nullptr) {
  std::map<std::pair<std::uint64_t, std::uint64_t>, std::size_t> mult;
  for (const Chain& c : family) {
    auto v = vertex_indices(c);
    std::set<std::pair<std::uint64_t, std::uint64_t>> own;
    for (std::size_t i = 0; i + 1 < v.size(); ++i) own.insert({v[i], v[i + 1]});
    for (const auto& s : own) ++mult[s];
  }
  SegmentStats st;
  st.unique_segments = mult.size();
  if (inst && T) {
    auto y = [&](std::uint64_t x) { return sigma(*inst, BigInt(x)); };
    struct Hit {
      BigInt num, den;  // crossing abscissa num/den
      SegmentCrossing seg;
    };
    std::vector<Hit> hits;
    for (const auto& [seg, m] : mult) {
      BigInt y1 = y(seg.first), y2 = y(seg.second);
      bool crosses = y1 == y2 ? y1 == *T : (y1 <= *T && *T < y2);
      if (!crosses) continue;
      Hit h;
      if (y1 == y2) {
        h.num = seg.first;
        h.den = 1;
      } else {
        h.den = y2 - y1;
        h.num = BigInt(seg.first) * h.den + (*T - y1) * (BigInt(seg.second) - BigInt(seg.first));
      }
      h.seg = {seg.first, seg.second, m};
      hits.push_back(std::move(h));
    }
    std::sort(hits.begin(), hits.end(), [](const Hit& a, const Hit& b) {
      BigInt l = a.num * b.den, r = b.num * a.den;
      if (l != r) return l < r;
      return a.seg.x1 < b.seg.x1;
    });
    for (auto& h : hits) {
      st.multiplicity_sum += h.seg.multiplicity;
      st.crossings.push_back(h.seg);
    }
  }
  return st;
}

}  // namespace orbital_ssp

#endif  // ORBITAL_SSP_NDP_HPP
