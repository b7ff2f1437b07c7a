// Copyright 2026 The orbital-ssp authors.
// SPDX-License-Identifier: MIT
//
// Subset-sum instances: validation, parsing, subset sums, prefix quantities,
// difference links and instance-family generators.

#ifndef ORBITAL_SSP_CORE_HPP
#define ORBITAL_SSP_CORE_HPP

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "orbital_ssp/bigint.hpp"

namespace orbital_ssp {

// A sorted positive sequence a with target T. perm[i] is the position in the
// user's original input of the i-th sorted element.
struct Instance {
  std::vector<BigInt> a;
  BigInt T;
  std::size_t n = 0;
  std::size_t m = 0;
  std::vector<std::size_t> perm;
  std::vector<BigInt> A;  // A[k] = a_1 + ... + a_k, A[0] = 0

  const BigInt& total() const { return A[n]; }
};

// A point of the plane: subset index x and subset sum y.
template <class Int = BigInt>
struct Point {
  Int x;
  Int y;
  bool operator==(const Point&) const = default;
};

// Difference link d_j = (b_j - b_{j-1}, a_j - a_{j-1}) with a_0 = b_0 = 0.
struct Link {
  BigInt dx;
  BigInt dy;
};

// Builds a validated instance. Values are sorted (stably); the permutation
// back to input order is kept. m becomes max(declared m, bit-length(a_n)).
inline Instance make_instance(std::vector<BigInt> values, BigInt T,
                              std::optional<std::size_t> declared_m = {}) {
  if (values.empty()) throw InputError("instance has no elements");
  for (const auto& v : values)
    if (v <= 0) throw InputError("elements must be positive, got " + v.str());
  Instance inst;
  inst.n = values.size();
  inst.perm.resize(inst.n);
  std::iota(inst.perm.begin(), inst.perm.end(), std::size_t{0});
  std::stable_sort(inst.perm.begin(), inst.perm.end(),
                   [&](std::size_t i, std::size_t j) { return values[i] < values[j]; });
  inst.a.reserve(inst.n);
  for (std::size_t i : inst.perm) inst.a.push_back(values[i]);
  inst.A.assign(inst.n + 1, 0);
  for (std::size_t k = 1; k <= inst.n; ++k) inst.A[k] = inst.A[k - 1] + inst.a[k - 1];
  if (T <= 0 || T > inst.A[inst.n]) throw InputError("target out of range");
  inst.T = std::move(T);
  inst.m = std::max(declared_m.value_or(0), bit_length(inst.a.back()));
  return inst;
}

// Same elements, different target.
inline Instance with_target(const Instance& inst, BigInt T) {
  if (T <= 0 || T > inst.total()) throw InputError("target out of range");
  Instance r = inst;
  r.T = std::move(T);
  return r;
}

namespace detail {

inline BigInt json_number(const nlohmann::json& j, const char* what) {
  if (j.is_string()) return parse_dec(j.get<std::string>());
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return BigInt(j.get<std::uint64_t>());
    return BigInt(j.get<std::int64_t>());
  }
  throw InputError(std::string("malformed number in field '") + what + "'");
}

// Wraps bare integer literals of 19 or more digits in quotes so that values
// beyond 64 bits survive JSON parsing exactly.
inline std::string quote_long_integers(const std::string& text) {
  std::string out;
  out.reserve(text.size() + 16);
  bool in_str = false;
  for (std::size_t i = 0; i < text.size();) {
    char c = text[i];
    if (in_str) {
      out += c;
      if (c == '\\' && i + 1 < text.size()) out += text[++i];
      else if (c == '"') in_str = false;
      ++i;
      continue;
    }
    if (c == '"') {
      in_str = true;
      out += c;
      ++i;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '-') {
      std::size_t j = i + (c == '-' ? 1 : 0);
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      bool plain = j == text.size() || (text[j] != '.' && text[j] != 'e' && text[j] != 'E');
      if (plain && j - i >= 19) {
        out += '"';
        out.append(text, i, j - i);
        out += '"';
      } else {
        out.append(text, i, j - i == 0 ? 1 : j - i);
      }
      i = j == i ? i + 1 : j;
      continue;
    }
    out += c;
    ++i;
  }
  return out;
}

}  // namespace detail

// Parses an instance file: a JSON object {"n","m"?,"a","T"} or plain text
// "n [m]" / a values / T on three lines.
inline Instance parse_instance(const std::string& text) {
  std::size_t p = text.find_first_not_of(" \t\r\n");
  if (p == std::string::npos) throw InputError("empty instance file");
  std::vector<BigInt> a;
  BigInt T;
  std::optional<std::size_t> m;
  std::size_t n = 0;
  if (text[p] == '{') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(detail::quote_long_integers(text));
    } catch (const nlohmann::json::exception& e) {
      throw InputError(std::string("malformed JSON: ") + e.what());
    }
    if (!j.contains("a") || !j["a"].is_array()) throw InputError("missing array 'a'");
    if (!j.contains("T")) throw InputError("missing target 'T'");
    for (const auto& v : j["a"]) a.push_back(detail::json_number(v, "a"));
    T = detail::json_number(j["T"], "T");
    n = j.contains("n") ? static_cast<std::size_t>(detail::json_number(j["n"], "n")) : a.size();
    if (j.contains("m") && !j["m"].is_null())
      m = static_cast<std::size_t>(detail::json_number(j["m"], "m"));
  } else {
    std::istringstream in(text);
    std::string line;
    std::vector<std::string> lines;
    while (std::getline(in, line)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      lines.push_back(line);
    }
    if (lines.size() != 3) throw InputError("plain instance needs 3 non-empty lines");
    std::istringstream h(lines[0]);
    std::string tok;
    std::vector<std::string> head;
    while (h >> tok) head.push_back(tok);
    if (head.empty() || head.size() > 2) throw InputError("header must be 'n [m]'");
    n = static_cast<std::size_t>(parse_dec(head[0]));
    if (head.size() == 2) m = static_cast<std::size_t>(parse_dec(head[1]));
    std::istringstream av(lines[1]);
    while (av >> tok) a.push_back(parse_dec(tok));
    std::istringstream tv(lines[2]);
    std::vector<std::string> ts;
    while (tv >> tok) ts.push_back(tok);
    if (ts.size() != 1) throw InputError("target line must hold one value");
    T = parse_dec(ts[0]);
  }
  if (n != a.size())
    throw InputError("declared n=" + std::to_string(n) + " but " + std::to_string(a.size()) +
                     " values given");
  return make_instance(std::move(a), std::move(T), m);
}

// Serializes in the JSON instance form, values as decimal strings, user order.
inline std::string instance_to_json(const Instance& inst) {
  std::vector<std::string> orig(inst.n);
  for (std::size_t i = 0; i < inst.n; ++i) orig[inst.perm[i]] = inst.a[i].str();
  nlohmann::json j;
  j["n"] = inst.n;
  j["m"] = inst.m;
  j["a"] = orig;
  j["T"] = inst.T.str();
  return j.dump();
}

// sigma_a(r): sum of a_u over the set bits u of r (bit 0 is a_1).
inline BigInt sigma(const Instance& inst, const BigInt& r) {
  if (r < 0 || r >= pow2(inst.n)) throw InputError("index out of range");
  BigInt s = 0;
  for (std::size_t u = 0; u < inst.n; ++u)
    if (boost::multiprecision::bit_test(r, static_cast<unsigned>(u))) s += inst.a[u];
  return s;
}

// Maps an index over the sorted sequence to the same subset in user order.
inline BigInt to_user_index(const Instance& inst, const BigInt& r) {
  BigInt out = 0;
  for (std::size_t u = 0; u < inst.n; ++u)
    if (boost::multiprecision::bit_test(r, static_cast<unsigned>(u)))
      boost::multiprecision::bit_set(out, static_cast<unsigned>(inst.perm[u]));
  return out;
}

// Inverse of to_user_index.
inline BigInt from_user_index(const Instance& inst, const BigInt& x) {
  BigInt out = 0;
  for (std::size_t u = 0; u < inst.n; ++u)
    if (boost::multiprecision::bit_test(x, static_cast<unsigned>(inst.perm[u])))
      boost::multiprecision::bit_set(out, static_cast<unsigned>(u));
  return out;
}

// B_k = 2^k - 1.
inline BigInt B(std::size_t k) { return pow2(k) - 1; }

// The n difference links of the instance.
inline std::vector<Link> links(const Instance& inst) {
  std::vector<Link> d(inst.n);
  for (std::size_t j = 1; j <= inst.n; ++j) {
    d[j - 1].dx = j == 1 ? BigInt(1) : pow2(j - 2);
    d[j - 1].dy = j == 1 ? inst.a[0] : BigInt(inst.a[j - 1] - inst.a[j - 2]);
  }
  return d;
}

// Instance families.
enum class Family { CP, AP, GP, Random, Dissociated };

inline Family parse_family(const std::string& s) {
  std::string l;
  for (char c : s) l += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (l == "cp") return Family::CP;
  if (l == "ap") return Family::AP;
  if (l == "gp") return Family::GP;
  if (l == "random") return Family::Random;
  if (l == "dissociated") return Family::Dissociated;
  throw InputError("unknown family '" + s + "'");
}

inline const char* family_name(Family f) {
  switch (f) {
    case Family::CP: return "cp";
    case Family::AP: return "ap";
    case Family::GP: return "gp";
    case Family::Random: return "random";
    case Family::Dissociated: return "dissociated";
  }
  return "?";
}

// How the target is chosen when not given explicitly.
enum class TargetMode { Half, Random };

struct GenParams {
  Family family = Family::Random;
  std::size_t n = 0;
  BigInt k1 = 1;       // CP value, AP first term, GP first term
  BigInt k2 = 1;       // AP common difference
  BigInt ratio = 2;    // GP ratio
  std::size_t m = 16;  // random: values drawn from [1, 2^m - 1]
  std::uint64_t seed = 0;
  std::optional<BigInt> T;
  TargetMode target = TargetMode::Half;
};

// Uniform big integer in [lo, hi] drawn from a 64-bit engine.
inline BigInt uniform_big(std::mt19937_64& rng, const BigInt& lo, const BigInt& hi) {
  BigInt span = hi - lo + 1;
  std::size_t bits = bit_length(span);
  for (;;) {
    BigInt r = 0;
    for (std::size_t got = 0; got < bits; got += 64) {
      r <<= 64;
      r += rng();
    }
    r >>= ((bits + 63) / 64) * 64 - bits;
    if (r < span) return lo + r;
  }
}

// Generates an instance of the requested family. Deterministic in params.
inline Instance generate(const GenParams& p) {
  if (p.n < 1) throw InputError("n must be at least 1");
  std::vector<BigInt> a;
  a.reserve(p.n);
  std::mt19937_64 rng(p.seed);
  switch (p.family) {
    case Family::CP:
      if (p.k1 <= 0) throw InputError("k1 must be positive");
      a.assign(p.n, p.k1);
      break;
    case Family::AP:
      if (p.k1 <= 0) throw InputError("k1 must be positive");
      if (p.k2 < 0) throw InputError("k2 must be non-negative");
      for (std::size_t i = 0; i < p.n; ++i) a.push_back(p.k1 + BigInt(i) * p.k2);
      break;
    case Family::GP: {
      if (p.ratio <= 1) throw InputError("ratio must exceed 1");
      if (p.k1 <= 0) throw InputError("k1 must be positive");
      BigInt v = p.k1;
      for (std::size_t i = 0; i < p.n; ++i, v *= p.ratio) a.push_back(v);
      break;
    }
    case Family::Random:
      if (p.m < 1) throw InputError("m must be at least 1");
      for (std::size_t i = 0; i < p.n; ++i) a.push_back(uniform_big(rng, 1, pow2(p.m) - 1));
      break;
    case Family::Dissociated:
      for (std::size_t i = 0; i < p.n; ++i) a.push_back(pow2(i));
      break;
  }
  BigInt total = std::accumulate(a.begin(), a.end(), BigInt(0));
  BigInt T;
  if (p.T) T = *p.T;
  else if (p.target == TargetMode::Half) T = std::max(BigInt(1), BigInt(total / 2));
  else T = uniform_big(rng, 1, total);
  std::optional<std::size_t> m;
  if (p.family == Family::Random) m = p.m;
  return make_instance(std::move(a), std::move(T), m);
}

namespace detail {

// Sorted signed sums over {-1,0,1}^k combinations of v.
template <class Int>
std::vector<Int> signed_sums(const std::vector<Int>& v) {
  std::vector<Int> s{Int(0)};
  for (const Int& x : v) {
    std::vector<Int> t;
    t.reserve(s.size() * 3);
    for (const Int& y : s) {
      t.push_back(y - x);
      t.push_back(y);
      t.push_back(y + x);
    }
    s.swap(t);
  }
  std::sort(s.begin(), s.end());
  return s;
}

}  // namespace detail

// True iff all 2^n subset sums are distinct. Uses a meet-in-the-middle search
// for a nonzero {-1,0,1} combination summing to zero.
inline bool is_dissociated(const Instance& inst) {
  if (inst.n > 30) throw GuardError("is_dissociated requires n <= 30");
  return dispatch_int(inst.total(), [&](auto tag) {
    using Int = decltype(tag);
    std::size_t h = inst.n / 2;
    std::vector<Int> L, R;
    for (std::size_t i = 0; i < inst.n; ++i)
      (i < h ? L : R).push_back(from_big<Int>(inst.a[i]));
    auto sl = detail::signed_sums(L);
    auto sr = detail::signed_sums(R);
    // Count pairs l + r == 0; the all-zero combination contributes exactly one.
    std::size_t i = 0;
    std::size_t j = sr.size();
    std::uint64_t pairs = 0;
    while (i < sl.size() && j > 0) {
      Int s = sl[i] + sr[j - 1];
      if (s < 0) {
        ++i;
      } else if (s > 0) {
        --j;
      } else {
        std::size_t i2 = i, j2 = j;
        while (i2 < sl.size() && sl[i2] == sl[i]) ++i2;
        while (j2 > 0 && sr[j2 - 1] == sr[j - 1]) --j2;
        pairs += static_cast<std::uint64_t>(i2 - i) * (j - j2);
        if (pairs > 1) return false;
        i = i2;
        j = j2;
      }
    }
    return pairs == 1;
  });
}

}  // namespace orbital_ssp

#endif  // ORBITAL_SSP_CORE_HPP
