// Copyright 2026 The orbital-ssp authors.
// SPDX-License-Identifier: MIT
//
// Randomized properties of the solver checked against exhaustive search.

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "orbital_ssp/oracle.hpp"
#include "orbital_ssp/pipeline.hpp"

using namespace orbital_ssp;

namespace {

constexpr int kTrials = 1000;
constexpr std::uint64_t kSeed = 97;

std::vector<BigInt> brute(const Instance& inst) {
  std::vector<BigInt> out;
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << inst.n); ++x)
    if (sigma(inst, BigInt(x)) == inst.T) out.push_back(to_user_index(inst, BigInt(x)));
  std::sort(out.begin(), out.end());
  return out;
}

Instance draw(std::mt19937_64& rng) {
  GenParams p;
  p.n = 2 + rng() % 12;
  p.seed = rng();
  switch (rng() % 5) {
    case 0: p.family = Family::CP; p.k1 = 1 + rng() % 9; break;
    case 1: p.family = Family::AP; p.k1 = 1 + rng() % 9; p.k2 = 1 + rng() % 5; break;
    case 2: p.family = Family::GP; p.n = std::min<std::size_t>(p.n, 9); p.ratio = 2 + rng() % 2; break;
    case 3: p.family = Family::Dissociated; break;
    default: p.family = Family::Random; p.m = 3 + rng() % 18; break;
  }
  auto inst = generate(p);
  std::uniform_int_distribution<std::uint64_t> pick(0, (std::uint64_t{1} << inst.n) - 1);
  if (rng() % 2) inst.T = sigma(inst, BigInt(pick(rng)));
  else inst.T = BigInt(1 + rng() % static_cast<std::uint64_t>(inst.total()));
  if (inst.T == 0) inst.T = inst.total();
  return inst;
}

}  // namespace

TEST(Properties, SoundAndComplete) {
  std::mt19937_64 rng(kSeed);
  for (int t = 0; t < kTrials; ++t) {
    auto inst = draw(rng);
    auto want = brute(inst);
    SolveOptions o;
    o.q_start = rng() % 2;
    o.filter_mode = rng() % 2 ? FilterMode::Clipped : FilterMode::Exact;
    auto r = solve(inst, o);
    EXPECT_EQ(r.unsound, 0u) << t;
    EXPECT_EQ(r.indices, want) << t << " " << instance_to_json(inst);
    EXPECT_EQ(r.n_sols, BigInt(want.size())) << t;
  }
}

TEST(Properties, ReflectionBijection) {
  std::mt19937_64 rng(kSeed + 1);
  for (int t = 0; t < 100; ++t) {
    auto inst = draw(rng);
    if (inst.T == inst.total()) continue;
    auto refl = inst;
    refl.T = inst.total() - inst.T;
    auto a = solve(inst);
    auto b = solve(refl);
    ASSERT_EQ(a.n_sols, b.n_sols) << t;
    std::vector<BigInt> comp;
    for (const auto& x : b.indices) comp.push_back(pow2(inst.n) - 1 - x);
    std::sort(comp.begin(), comp.end());
    EXPECT_EQ(a.indices, comp) << t;
  }
}

TEST(Properties, PermutationInvariance) {
  std::mt19937_64 rng(kSeed + 2);
  for (int t = 0; t < 60; ++t) {
    auto inst = draw(rng);
    std::vector<BigInt> user(inst.n);
    for (std::size_t i = 0; i < inst.n; ++i) user[inst.perm[i]] = inst.a[i];
    std::shuffle(user.begin(), user.end(), rng);
    auto shuffled = make_instance(user, inst.T);
    EXPECT_EQ(solve(shuffled).n_sols, solve(inst).n_sols) << t;
  }
}

TEST(Properties, ScalingInvariance) {
  std::mt19937_64 rng(kSeed + 3);
  for (int t = 0; t < 60; ++t) {
    auto inst = draw(rng);
    BigInt c = 2 + rng() % 1000;
    std::vector<BigInt> a;
    for (const auto& v : inst.a) a.push_back(v * c);
    auto scaled = make_instance(a, inst.T * c);
    EXPECT_EQ(solve(scaled).n_sols, solve(inst).n_sols) << t;
    scaled.T += 1;
    if (scaled.T <= scaled.total()) {
      EXPECT_EQ(solve(scaled).n_sols, 0) << t;
    }
  }
}

TEST(Properties, OraclesAgreeWithSolver) {
  std::mt19937_64 rng(kSeed + 4);
  for (int t = 0; t < 100; ++t) {
    auto inst = draw(rng);
    SolveOptions o;
    o.count_only = true;
    auto r = solve(inst, o);
    EXPECT_EQ(r.n_sols, count_mitm(inst).count) << t;
    EXPECT_EQ(r.n_sols, count_dp(inst).count) << t;
  }
}
