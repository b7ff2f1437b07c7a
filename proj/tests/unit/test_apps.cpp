// Copyright 2026 The orbital-ssp authors.
// SPDX-License-Identifier: MIT

#include <gtest/gtest.h>

#include "orbital_ssp/apps.hpp"

using namespace orbital_ssp;

TEST(Apps, ParseAndName) {
  for (auto k : {AppKind::Binomial, AppKind::Partitions, AppKind::Cubes}) EXPECT_EQ(parse_app(app_name(k)), k);
  EXPECT_THROW(parse_app("squares"), InputError);
}

TEST(Apps, InstanceShapes) {
  auto b = app_instance(AppKind::Binomial, 6, 2);
  EXPECT_EQ(b.a, std::vector<BigInt>(6, 1));
  EXPECT_EQ(b.T, 2);
  auto c = app_instance(AppKind::Cubes, 100, 4);
  EXPECT_EQ(c.a, (std::vector<BigInt>{1, 8, 27, 64}));
  EXPECT_THROW(app_instance(AppKind::Binomial, 3, 4), InputError);
  EXPECT_THROW(app_instance(AppKind::Partitions, 3, 0), InputError);
}

TEST(Apps, BinomialCounts) {
  for (std::size_t n = 1; n <= 24; n += 3)
    for (std::size_t k = 1; k <= n; k += 2) {
      auto r = run_app(AppKind::Binomial, n, k);
      EXPECT_EQ(r.pipeline_count, binomial(n, k)) << n << " " << k;
      EXPECT_TRUE(r.agree);
    }
}

TEST(Apps, DistinctPartitions) {
  const std::vector<int> q = {1, 1, 1, 2, 2, 3, 4, 5, 6, 8, 10, 12, 15, 18, 22, 27, 32, 38, 46, 54, 64};
  for (std::size_t N = 1; N <= 20; ++N) {
    auto r = run_app(AppKind::Partitions, N, N);
    EXPECT_EQ(r.pipeline_count, q[N]) << N;
    EXPECT_TRUE(r.agree);
  }
}

TEST(Apps, DistinctCubes) {
  auto r = run_app(AppKind::Cubes, 1 + 8 + 64 + 216, 6);
  EXPECT_TRUE(r.agree);
  EXPECT_GE(r.pipeline_count, 1);
  bool found = false;
  for (const auto& x : r.pipeline_indices) {
    auto b = cube_bases(x, 6);
    std::size_t s = 0;
    for (auto v : b) s += v * v * v;
    EXPECT_EQ(s, 289u);
    found |= b == std::vector<std::size_t>{1, 2, 4, 6};
  }
  EXPECT_TRUE(found);
  auto none = run_app(AppKind::Cubes, 2, 5);
  EXPECT_EQ(none.pipeline_count, 0);
  EXPECT_TRUE(none.agree);
}
