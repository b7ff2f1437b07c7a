// Copyright 2026 The orbital-ssp authors.
// SPDX-License-Identifier: MIT
//
// Independent ground-truth solvers: exhaustive enumeration, meet-in-the-middle
// counting, pseudo-polynomial DP counting, subset-sum multiplicity statistics,
// and the affine reduction for arithmetic progressions.

#ifndef ORBITAL_SSP_ORACLE_HPP
#define ORBITAL_SSP_ORACLE_HPP

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <map>
#include <queue>
#include <string>
#include <vector>

#include "orbital_ssp/bigint.hpp"
#include "orbital_ssp/core.hpp"

namespace orbital_ssp {

struct OracleReport {
  std::string method;
  BigInt count = 0;
  std::vector<BigInt> sample;  // user-order indices of some solutions
  double ms = 0;
};

inline constexpr std::size_t kEnumMaxN = 28;
inline constexpr std::size_t kMitmMaxN = 44;
inline constexpr std::uint64_t kDpMaxT = 100000000;
inline constexpr std::size_t kDefaultSample = 16;

namespace detail {

inline double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

// All 2^k subset sums of a[lo..lo+k) in mask order.
template <class Int>
std::vector<Int> half_sums(const Instance& inst, std::size_t lo, std::size_t k) {
  std::vector<Int> s(std::size_t{1} << k);
  s[0] = 0;
  for (std::size_t j = 0; j < k; ++j) {
    Int aj = from_big<Int>(inst.a[lo + j]);
    std::size_t h = std::size_t{1} << j;
    for (std::size_t m = 0; m < h; ++m) s[h + m] = s[m] + aj;
  }
  return s;
}

}  // namespace detail

// Gray-code walk over all 2^n subsets.
inline OracleReport count_enum(const Instance& inst, std::size_t sample_cap = kDefaultSample) {
  if (inst.n > kEnumMaxN) throw GuardError("count_enum requires n <= 28");
  auto t0 = std::chrono::steady_clock::now();
  OracleReport r;
  r.method = "enum";
  dispatch_int(inst.total(), [&](auto tag) {
    using Int = decltype(tag);
    std::vector<Int> a(inst.n);
    for (std::size_t i = 0; i < inst.n; ++i) a[i] = from_big<Int>(inst.a[i]);
    Int T = from_big<Int>(inst.T);
    Int s = 0;
    std::uint64_t mask = 0, count = 0;
    std::uint64_t total = std::uint64_t{1} << inst.n;
    for (std::uint64_t g = 1; g <= total; ++g) {
      if (s == T) {
        ++count;
        if (r.sample.size() < sample_cap) r.sample.push_back(to_user_index(inst, BigInt(mask)));
      }
      if (g == total) break;
      unsigned bit = static_cast<unsigned>(__builtin_ctzll(g));
      mask ^= std::uint64_t{1} << bit;
      if (mask >> bit & 1) s += a[bit];
      else s -= a[bit];
    }
    r.count = count;
  });
  r.ms = detail::ms_since(t0);
  return r;
}

// Two sorted half-tables swept with two pointers; runs of equal sums on both
// sides contribute the product of their lengths.
inline OracleReport count_mitm(const Instance& inst, std::size_t sample_cap = kDefaultSample) {
  if (inst.n > kMitmMaxN) throw GuardError("count_mitm requires n <= 44");
  auto t0 = std::chrono::steady_clock::now();
  OracleReport r;
  r.method = "mitm";
  dispatch_int(inst.total(), [&](auto tag) {
    using Int = decltype(tag);
    std::size_t k1 = inst.n / 2, k2 = inst.n - k1;
    auto L = detail::half_sums<Int>(inst, 0, k1);
    auto R = detail::half_sums<Int>(inst, k1, k2);
    std::vector<std::uint32_t> li(L.size()), ri(R.size());
    for (std::uint32_t i = 0; i < li.size(); ++i) li[i] = i;
    for (std::uint32_t i = 0; i < ri.size(); ++i) ri[i] = i;
    std::sort(li.begin(), li.end(), [&](auto x, auto y) { return L[x] < L[y]; });
    std::sort(ri.begin(), ri.end(), [&](auto x, auto y) { return R[x] > R[y]; });
    Int T = from_big<Int>(inst.T);
    BigInt count = 0;
    std::size_t i = 0, j = 0;
    while (i < li.size() && j < ri.size()) {
      Int s = L[li[i]] + R[ri[j]];
      if (s < T) {
        ++i;
      } else if (s > T) {
        ++j;
      } else {
        std::size_t i2 = i, j2 = j;
        while (i2 < li.size() && L[li[i2]] == L[li[i]]) ++i2;
        while (j2 < ri.size() && R[ri[j2]] == R[ri[j]]) ++j2;
        count += BigInt(i2 - i) * BigInt(j2 - j);
        for (std::size_t x = i; x < i2 && r.sample.size() < sample_cap; ++x)
          for (std::size_t y = j; y < j2 && r.sample.size() < sample_cap; ++y) {
            BigInt idx = BigInt(li[x]) | (BigInt(ri[y]) << k1);
            r.sample.push_back(to_user_index(inst, idx));
          }
        i = i2;
        j = j2;
      }
    }
    r.count = count;
  });
  r.ms = detail::ms_since(t0);
  return r;
}

namespace detail {

// One-row 0/1-knapsack counting recurrence over 0..T.
template <class Cell>
bool dp_row(const Instance& inst, std::uint64_t T, BigInt& out) {
  std::vector<Cell> row(T + 1, Cell(0));
  row[0] = 1;
  for (const BigInt& ab : inst.a) {
    if (ab > T) continue;
    std::uint64_t a = static_cast<std::uint64_t>(ab);
    for (std::uint64_t s = T; s >= a; --s) {
      if constexpr (std::is_same_v<Cell, BigInt>) {
        row[s] += row[s - a];
      } else {
        if (__builtin_add_overflow(row[s], row[s - a], &row[s])) return false;
      }
      if (s == a) break;
    }
  }
  if constexpr (std::is_same_v<Cell, unsigned __int128>) {
    out = to_big(static_cast<i128>(row[T] >> 1)) * 2 + static_cast<unsigned>(row[T] & 1);
  } else {
    out = BigInt(row[T]);
  }
  return true;
}

}  // namespace detail

// Counting DP over targets 0..T with word, double-word, then big cells.
inline OracleReport count_dp(const Instance& inst) {
  if (inst.T > kDpMaxT) throw GuardError("count_dp requires T <= 1e8");
  auto t0 = std::chrono::steady_clock::now();
  OracleReport r;
  r.method = "dp";
  std::uint64_t T = static_cast<std::uint64_t>(inst.T);
  if (!detail::dp_row<std::uint64_t>(inst, T, r.count) &&
      !detail::dp_row<unsigned __int128>(inst, T, r.count))
    detail::dp_row<BigInt>(inst, T, r.count);
  r.ms = detail::ms_since(t0);
  return r;
}

// All solutions (user-order indices, ascending) by backtracking through a
// reachability table over (prefix length, sum). Guarded by n * (T + 1).
inline std::vector<BigInt> dp_solutions(const Instance& inst, std::size_t cap) {
  if (inst.T > kDpMaxT || BigInt(inst.n) * (inst.T + 1) > BigInt(50000000))
    throw GuardError("dp_solutions requires n * (T + 1) <= 5e7");
  std::uint64_t T = static_cast<std::uint64_t>(inst.T);
  std::size_t n = inst.n;
  std::vector<std::vector<char>> reach(n + 1, std::vector<char>(T + 1, 0));
  reach[0][0] = 1;
  for (std::size_t i = 1; i <= n; ++i) {
    std::uint64_t a = inst.a[i - 1] > T ? T + 1 : static_cast<std::uint64_t>(inst.a[i - 1]);
    for (std::uint64_t s = 0; s <= T; ++s)
      reach[i][s] = reach[i - 1][s] || (s >= a && reach[i - 1][s - a]);
  }
  std::vector<BigInt> out;
  std::vector<char> take(n, 0);
  auto rec = [&](auto&& self, std::size_t i, std::uint64_t s) -> void {
    if (out.size() >= cap) return;
    if (i == 0) {
      BigInt idx = 0;
      for (std::size_t u = 0; u < n; ++u)
        if (take[u]) boost::multiprecision::bit_set(idx, static_cast<unsigned>(u));
      out.push_back(to_user_index(inst, idx));
      return;
    }
    if (reach[i - 1][s]) {
      take[i - 1] = 0;
      self(self, i - 1, s);
    }
    std::uint64_t a = inst.a[i - 1] > T ? T + 1 : static_cast<std::uint64_t>(inst.a[i - 1]);
    if (s >= a && reach[i - 1][s - a]) {
      take[i - 1] = 1;
      self(self, i - 1, s - a);
      take[i - 1] = 0;
    }
  };
  if (reach[n][T]) rec(rec, n, T);
  std::sort(out.begin(), out.end());
  return out;
}

// Subset-sum multiplicity statistics: U distinct sums, N_LO the largest
// multiplicity, and the histogram multiplicity -> number of sums.
struct SumStats {
  BigInt U = 0;
  BigInt N_LO = 0;
  std::map<BigInt, BigInt> histogram;
  BigInt total = 0;  // sum over histogram of multiplicity * frequency (== 2^n)
  std::string method;
};

inline constexpr std::uint64_t kStatsDpMax = 50000000;

inline SumStats unique_sum_stats(const Instance& inst) {
  SumStats st;
  auto add = [&](const BigInt& mult) {
    ++st.U;
    st.histogram[mult] += 1;
    st.total += mult;
    if (mult > st.N_LO) st.N_LO = mult;
  };
  if (inst.total() <= kStatsDpMax) {
    st.method = "dp";
    std::uint64_t S = static_cast<std::uint64_t>(inst.total());
    std::vector<BigInt> row(S + 1, 0);
    row[0] = 1;
    std::uint64_t reach = 0;
    for (const BigInt& ab : inst.a) {
      std::uint64_t a = static_cast<std::uint64_t>(ab);
      reach += a;
      for (std::uint64_t s = reach; s >= a; --s) {
        if (!row[s - a].is_zero()) row[s] += row[s - a];
        if (s == a) break;
      }
    }
    for (const BigInt& c : row)
      if (!c.is_zero()) add(c);
    return st;
  }
  if (inst.n > kEnumMaxN) throw GuardError("unique_sum_stats requires n <= 28 or A_n <= 5e7");
  st.method = "enum";
  dispatch_int(inst.total(), [&](auto tag) {
    using Int = decltype(tag);
    std::size_t lo = std::min<std::size_t>(inst.n, 24);
    auto low = detail::half_sums<Int>(inst, 0, lo);
    std::sort(low.begin(), low.end());
    auto high = detail::half_sums<Int>(inst, lo, inst.n - lo);
    using Item = std::pair<Int, std::size_t>;  // (sum, high index)
    auto cmp = [](const Item& x, const Item& y) { return x.first > y.first; };
    std::priority_queue<Item, std::vector<Item>, decltype(cmp)> pq(cmp);
    std::vector<std::size_t> pos(high.size(), 0);
    for (std::size_t h = 0; h < high.size(); ++h) pq.push({high[h] + low[0], h});
    bool have = false;
    Int cur{};
    std::uint64_t mult = 0;
    while (!pq.empty()) {
      auto [s, h] = pq.top();
      pq.pop();
      if (have && s == cur) {
        ++mult;
      } else {
        if (have) add(BigInt(mult));
        have = true;
        cur = s;
        mult = 1;
      }
      if (++pos[h] < low.size()) pq.push({high[h] + low[pos[h]], h});
    }
    if (have) add(BigInt(mult));
  });
  return st;
}

// Count for a_i = c + (i-1) d: a size-s subset with index set I sums to
// s c + d * sum(I - 1), so count s-subsets of {0..n-1} with sum (T - s c)/d.
inline BigInt count_ap(std::size_t n, const BigInt& c, const BigInt& d, const BigInt& T) {
  if (d <= 0 || c <= 0) throw InputError("AP parameters must be positive");
  std::size_t maxq = n * (n - 1) / 2;
  // ways[s][q]: s-subsets of the processed prefix of {0..n-1} summing to q
  std::vector<std::vector<BigInt>> ways(n + 1, std::vector<BigInt>(maxq + 1, 0));
  ways[0][0] = 1;
  for (std::size_t v = 0; v < n; ++v)
    for (std::size_t s = v + 1; s >= 1; --s)
      for (std::size_t q = maxq; q >= v; --q) {
        if (!ways[s - 1][q - v].is_zero()) ways[s][q] += ways[s - 1][q - v];
        if (q == v) break;
      }
  BigInt total = 0;
  for (std::size_t s = 0; s <= n; ++s) {
    BigInt rest = T - BigInt(s) * c;
    if (rest < 0 || rest % d != 0) continue;
    BigInt q = rest / d;
    if (q > maxq) continue;
    total += ways[s][static_cast<std::size_t>(q)];
  }
  return total;
}

// Largest admissible method for an instance: enum, mitm, then dp.
inline std::string auto_oracle(const Instance& inst) {
  if (inst.n <= 20) return "enum";
  if (inst.T <= 1000000) return "dp";
  if (inst.n <= kMitmMaxN) return "mitm";
  if (inst.T <= kDpMaxT) return "dp";
  throw GuardError("no oracle applies to this instance");
}

inline OracleReport run_oracle(const std::string& method, const Instance& inst) {
  if (method == "enum") return count_enum(inst);
  if (method == "mitm") return count_mitm(inst);
  if (method == "dp") return count_dp(inst);
  if (method == "auto") return run_oracle(auto_oracle(inst), inst);
  throw InputError("unknown oracle method '" + method + "'");
}

}  // namespace orbital_ssp

#endif  // ORBITAL_SSP_ORACLE_HPP
