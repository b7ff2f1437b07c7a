// Copyright 2026 The orbital-ssp authors.
// SPDX-License-Identifier: MIT
//
// Combinatorial counting through the subset-sum solver: binomial
// coefficients, partitions into distinct parts bounded by K, and sums of
// distinct cubes. Each count is produced by the geometric pipeline and by
// the DP oracle.

#ifndef ORBITAL_SSP_APPS_HPP
#define ORBITAL_SSP_APPS_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "orbital_ssp/bigint.hpp"
#include "orbital_ssp/core.hpp"
#include "orbital_ssp/oracle.hpp"
#include "orbital_ssp/pipeline.hpp"

namespace orbital_ssp {

enum class AppKind { Binomial, Partitions, Cubes };

inline AppKind parse_app(const std::string& s) {
  if (s == "binomial") return AppKind::Binomial;
  if (s == "partitions") return AppKind::Partitions;
  if (s == "cubes") return AppKind::Cubes;
  throw InputError("unknown application '" + s + "'");
}

inline const char* app_name(AppKind k) {
  switch (k) {
    case AppKind::Binomial: return "binomial";
    case AppKind::Partitions: return "partitions";
    case AppKind::Cubes: return "cubes";
  }
  return "?";
}

// binomial(n, k): a = 1^n, T = k; partitions(N, K): a = 1..K, T = N;
// cubes(N, K): a = 1^3..K^3, T = N.
inline Instance app_instance(AppKind kind, std::size_t p1, std::size_t p2) {
  std::vector<BigInt> a;
  BigInt T;
  switch (kind) {
    case AppKind::Binomial:
      if (p1 == 0 || p2 > p1) throw InputError("binomial needs 0 <= k <= n and n >= 1");
      a.assign(p1, BigInt(1));
      T = p2;
      break;
    case AppKind::Partitions:
    case AppKind::Cubes:
      if (p2 == 0) throw InputError("K must be positive");
      for (std::size_t i = 1; i <= p2; ++i) a.push_back(kind == AppKind::Cubes ? BigInt(i) * i * i : BigInt(i));
      T = p1;
      break;
  }
  return make_instance(std::move(a), std::move(T));
}

struct AppResult {
  AppKind kind{};
  Instance inst;
  BigInt pipeline_count = 0;
  BigInt dp_count = 0;
  std::vector<BigInt> pipeline_indices;
  std::vector<BigInt> dp_indices;
  bool agree = false;
};

inline constexpr std::size_t kAppIndexCap = 1000;

inline AppResult run_app(AppKind kind, std::size_t p1, std::size_t p2) {
  AppResult r;
  r.kind = kind;
  r.inst = app_instance(kind, p1, p2);
  SolveOptions opt;
  opt.count_only = kind != AppKind::Cubes;
  opt.indices_cap = kAppIndexCap;
  auto sr = solve(r.inst, opt);
  r.pipeline_count = sr.n_sols;
  r.pipeline_indices = sr.indices;
  r.dp_count = count_dp(r.inst).count;
  r.agree = r.pipeline_count == r.dp_count && sr.unsound == 0;
  if (kind == AppKind::Cubes) {
    r.dp_indices = dp_solutions(r.inst, kAppIndexCap);
    r.agree = r.agree && r.dp_indices == r.pipeline_indices;
  }
  return r;
}

// Parts of one cube decomposition, ascending bases.
inline std::vector<std::size_t> cube_bases(const BigInt& user_index, std::size_t K) {
  std::vector<std::size_t> b;
  for (std::size_t i = 0; i < K; ++i)
    if (boost::multiprecision::bit_test(user_index, static_cast<unsigned>(i))) b.push_back(i + 1);
  return b;
}

}  // namespace orbital_ssp

#endif  // ORBITAL_SSP_APPS_HPP
