// Copyright 2026 The orbital-ssp authors.
// SPDX-License-Identifier: MIT

#include <gtest/gtest.h>

#include <random>

#include "orbital_ssp/analysis.hpp"
#include "orbital_ssp/oracle.hpp"
#include "orbital_ssp/pipeline.hpp"

using namespace orbital_ssp;

namespace {

Instance random_instance(std::mt19937_64& rng, std::size_t n, std::uint64_t max, bool planted) {
  std::vector<BigInt> a;
  for (std::size_t i = 0; i < n; ++i) a.push_back(BigInt(1 + rng() % max));
  auto inst = make_instance(a, 1);
  if (planted) inst.T = sigma(inst, BigInt(1 + rng() % ((std::uint64_t{1} << n) - 1)));
  else inst.T = BigInt(1 + rng() % static_cast<std::uint64_t>(inst.total()));
  return inst;
}

}  // namespace

TEST(Mu0, ClosedForm) {
  EXPECT_EQ(mu0(3), 7);
  EXPECT_EQ(mu0(4), 22);
  EXPECT_EQ(mu0(9), 287);
  for (std::size_t n = 2; n <= 200; ++n) {
    BigInt v = BigInt(n) * n * n + 3 * BigInt(n) * n + 6 - 13 * BigInt(n);
    EXPECT_EQ(v % 3, 0) << n;
  }
}

TEST(ConfigGraph, ConstantProfileHasUnitGamma) {
  for (std::size_t n = 3; n <= 9; ++n) {
    GenParams p;
    p.family = Family::CP;
    p.n = n;
    p.k1 = 4;
    auto inst = generate(p);
    inst.T = 4 * (n / 2);
    auto cg = build_config_graph(inst);
    ASSERT_FALSE(cg.gamma.empty());
    for (const auto& g : cg.gamma) EXPECT_EQ(g, 1) << n;
  }
}

TEST(ConfigGraph, InvariantsOnRandomInstances) {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 80; ++trial) {
    std::size_t n = 3 + rng() % 6;
    auto inst = random_instance(rng, n, 200, trial % 2 == 0);
    for (bool zero_only : {false, true}) {
      auto cg = build_config_graph(inst, kConfigStateCap, zero_only);
      EXPECT_FALSE(cg.truncated);
      auto au = product_inequality_audit(cg);
      if (!cg.gamma.empty()) {
        EXPECT_TRUE(au.gamma0_is_one) << trial;
      }
      EXPECT_TRUE(au.growth_law) << trial;
      EXPECT_TRUE(au.sandwich_upper) << trial;
      EXPECT_TRUE(au.product) << trial;
      EXPECT_TRUE(au.mu_bounded) << trial;
      EXPECT_TRUE(au.max_gamma_bound) << trial;
      for (std::size_t r = 0; r < cg.gamma.size(); ++r) EXPECT_EQ(cg.gamma[r], BigInt(cg.F[r].size()));
    }
  }
}

TEST(ConfigGraph, ZeroOnlyIsEmptyWithoutSolutions) {
  auto inst = make_instance({4, 8, 12, 20}, 6);
  auto cg = build_config_graph(inst, kConfigStateCap, true);
  EXPECT_TRUE(cg.gamma.empty());
  auto full = build_config_graph(inst);
  EXPECT_FALSE(full.gamma.empty());
}

TEST(ConfigGraph, ZeroOnlyLevelsAreSubsets) {
  std::mt19937_64 rng(67);
  for (int trial = 0; trial < 30; ++trial) {
    auto inst = random_instance(rng, 6, 60, true);
    auto full = build_config_graph(inst);
    auto zero = build_config_graph(inst, kConfigStateCap, true);
    ASSERT_LE(zero.gamma.size(), full.gamma.size());
    for (std::size_t r = 0; r < zero.gamma.size(); ++r) EXPECT_LE(zero.gamma[r], full.gamma[r]);
  }
}

TEST(ConfigGraph, StateCapTruncates) {
  std::mt19937_64 rng(71);
  auto inst = random_instance(rng, 9, 100000, true);
  auto cg = build_config_graph(inst, 10);
  EXPECT_TRUE(cg.truncated);
}

TEST(Growth, ReferencesAndSummary) {
  EXPECT_EQ(ceil_log_mult(3, 1), 0u);
  EXPECT_EQ(ceil_log_mult(3, 8), 9u);
  EXPECT_EQ(ceil_log_mult(7, 16), 28u);
  EXPECT_EQ(ceil_log_mult(3, 10), 10u);
  auto rows = growth_summary({{10, 3, 1.5}, {10, 5, 1.2}, {12, 2, 2.0}});
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].n, 10u);
  EXPECT_EQ(rows[0].kpeak_max, 5u);
  EXPECT_DOUBLE_EQ(rows[0].eta_peak_max, 1.5);
  EXPECT_EQ(rows[1].ref_7logn, ceil_log_mult(7, 12));
}

TEST(VmBound, HoldsOnSmallInstances) {
  std::mt19937_64 rng(73);
  for (int trial = 0; trial < 20; ++trial) {
    auto inst = random_instance(rng, 8 + rng() % 5, 1 << 12, true);
    auto st = unique_sum_stats(inst);
    SolveOptions o;
    o.count_only = true;
    auto r = solve(inst, o);
    auto b = vm_bound_check(inst, st.U, r.v0, r.final_nodes);
    EXPECT_TRUE(b.holds) << trial;
    EXPECT_GT(b.factor, 0);
  }
  auto inst = make_instance({1, 2, 3}, 3);
  auto b = vm_bound_check(inst, BigInt(7), BigInt(10), 1000);
  EXPECT_FALSE(b.holds);
  EXPECT_DOUBLE_EQ(b.factor, std::min(14.0 / 12.0, 4.0));
}
