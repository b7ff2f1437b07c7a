// Copyright 2026 The orbital-ssp authors.
// SPDX-License-Identifier: MIT
//
// Arbitrary-precision integer alias, conversions between the machine integer
// types used by the graph engine, and runtime dispatch over those types.

#ifndef ORBITAL_SSP_BIGINT_HPP
#define ORBITAL_SSP_BIGINT_HPP

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

namespace orbital_ssp {

using BigInt = boost::multiprecision::cpp_int;
using i128 = __int128;

// Error raised for malformed or out-of-range user input.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Error raised when an operation's documented size guard is violated.
class GuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// 2^k as a big integer.
inline BigInt pow2(std::size_t k) {
  BigInt r = 1;
  r <<= k;
  return r;
}

// Number of significant bits; bit_length(0) == 0.
inline std::size_t bit_length(const BigInt& v) {
  if (v.is_zero()) return 0;
  return boost::multiprecision::msb(v) + 1;
}

// Exact binomial coefficient C(n, k) by the multiplicative formula.
inline BigInt binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt r = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

// Decimal string of any supported integer type.
template <class Int>
std::string to_dec(const Int& v);

template <class Int>
BigInt to_big(const Int& v) {
  if constexpr (std::is_same_v<Int, BigInt>) {
    return v;
  } else if constexpr (std::is_same_v<Int, i128>) {
    bool neg = v < 0;
    unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1
                              : static_cast<unsigned __int128>(v);
    BigInt r = static_cast<std::uint64_t>(u >> 64);
    r <<= 64;
    r += static_cast<std::uint64_t>(u);
    return neg ? BigInt(-r) : r;
  } else {
    return BigInt(v);
  }
}

template <class Int>
Int from_big(const BigInt& v) {
  if constexpr (std::is_same_v<Int, BigInt>) {
    return v;
  } else if constexpr (std::is_same_v<Int, i128>) {
    bool neg = v < 0;
    BigInt m = neg ? BigInt(-v) : v;
    std::uint64_t lo = static_cast<std::uint64_t>(m & BigInt(~std::uint64_t{0}));
    std::uint64_t hi = static_cast<std::uint64_t>(m >> 64);
    unsigned __int128 u = (static_cast<unsigned __int128>(hi) << 64) | lo;
    return neg ? -static_cast<i128>(u) : static_cast<i128>(u);
  } else {
    return static_cast<Int>(v);
  }
}

template <class Int>
std::string to_dec(const Int& v) {
  if constexpr (std::is_same_v<Int, BigInt>) {
    return v.str();
  } else if constexpr (std::is_same_v<Int, i128>) {
    return to_big(v).str();
  } else {
    return std::to_string(v);
  }
}

// Parses a non-negative or negative decimal integer; rejects anything else.
inline BigInt parse_dec(const std::string& s) {
  std::size_t i = 0;
  bool neg = false;
  if (i < s.size() && (s[i] == '-' || s[i] == '+')) {
    neg = s[i] == '-';
    ++i;
  }
  if (i == s.size()) throw InputError("malformed number '" + s + "'");
  BigInt r = 0;
  for (; i < s.size(); ++i) {
    char c = s[i];
    if (c == ',' || c == '_') continue;
    if (c < '0' || c > '9') throw InputError("malformed number '" + s + "'");
    r *= 10;
    r += c - '0';
  }
  return neg ? BigInt(-r) : r;
}

// Names the integer type selected by dispatch_int, for diagnostics.
template <class Int>
constexpr const char* int_type_name() {
  if constexpr (std::is_same_v<Int, BigInt>) return "bigint";
  else if constexpr (std::is_same_v<Int, i128>) return "int128";
  else return "int64";
}

// Invokes f with a value-initialized tag of the narrowest integer type whose
// range holds +-bound with headroom for a few additions.
template <class F>
decltype(auto) dispatch_int(const BigInt& bound, F&& f) {
  std::size_t bits = bit_length(bound < 0 ? BigInt(-bound) : bound);
  if (bits <= 60) return std::forward<F>(f)(std::int64_t{});
  if (bits <= 124) return std::forward<F>(f)(i128{});
  return std::forward<F>(f)(BigInt{});
}

}  // namespace orbital_ssp

#endif  // ORBITAL_SSP_BIGINT_HPP
