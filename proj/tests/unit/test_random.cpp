/*
 * Copyright (c) 2026, The scd-axes Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <gtest/gtest.h>

#include <cmath>
#include <set>
#include <vector>

#include "scdaxes/parallel.hpp"
#include "scdaxes/random.hpp"

namespace scdaxes {
namespace {

TEST(Random, SplitMixMatchesReferenceSequence) {
  // First outputs of SplitMix64 seeded with 0.
  std::uint64_t state = 0;
  EXPECT_EQ(splitmix64(state), 0xe220a8397b1dcdafULL);
  EXPECT_EQ(splitmix64(state), 0x6e789e6aa1b965f4ULL);
  EXPECT_EQ(splitmix64(state), 0x06c45d188009454fULL);
}

TEST(Random, Fnv1aMatchesReferenceValues) {
  EXPECT_EQ(fnv1a64(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(fnv1a64("a"), 0xaf63dc4c8601ec8cULL);
  EXPECT_EQ(fnv1a64("foobar"), 0x85944171f73967e8ULL);
}

TEST(Random, DerivedSeedsDependOnKeyOnly) {
  EXPECT_EQ(derive_seed(7, "plane"), derive_seed(7, "plane"));
  EXPECT_NE(derive_seed(7, "plane"), derive_seed(7, "plant"));
  EXPECT_NE(derive_seed(7, "plane"), derive_seed(8, "plane"));
}

TEST(Random, SameSeedSameStream) {
  Xoshiro256 a(42), b(42), c(43);
  bool differs = false;
  for (int i = 0; i < 1000; ++i) {
    const auto x = a.next();
    EXPECT_EQ(x, b.next());
    differs |= x != c.next();
  }
  EXPECT_TRUE(differs);
}

TEST(Random, UniformRanges) {
  Xoshiro256 rng(1);
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    const double v = rng.uniform_open0();
    ASSERT_GT(v, 0.0);
    ASSERT_LE(v, 1.0);
    ASSERT_LT(rng.below(7), 7u);
  }
}

TEST(Random, BelowCoversRange) {
  Xoshiro256 rng(3);
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 1000; ++i) seen.insert(rng.below(5));
  EXPECT_EQ(seen.size(), 5u);
}

TEST(Random, MomentsOfDistributions) {
  Xoshiro256 rng(11);
  const int n = 200000;
  double sn = 0, sn2 = 0, se = 0, sg = 0;
  for (int i = 0; i < n; ++i) {
    const double z = rng.normal();
    sn += z;
    sn2 += z * z;
    se += rng.exponential();
    sg += rng.gamma_int(4);
  }
  EXPECT_NEAR(sn / n, 0.0, 0.01);
  EXPECT_NEAR(sn2 / n, 1.0, 0.02);
  EXPECT_NEAR(se / n, 1.0, 0.02);
  EXPECT_NEAR(sg / n, 4.0, 0.05);
}

TEST(Parallel, EverySlotVisitedOnce) {
  std::vector<int> hits(1001, 0);
  parallel_for(hits.size(), [&](std::size_t i) { hits[i] += 1; });
  for (int h : hits) EXPECT_EQ(h, 1);
  parallel_for(0, [&](std::size_t) { FAIL(); });
}

TEST(Parallel, WorkerExceptionReachesCaller) {
  EXPECT_THROW(parallel_for(100,
                            [](std::size_t i) {
                              if (i == 57) throw std::runtime_error("boom");
                            }),
               std::runtime_error);
}

TEST(Parallel, WorkerCountHonoursEnvironment) {
  ::setenv("SCD_AXES_THREADS", "1", 1);
  EXPECT_EQ(worker_count(), 1u);
  ::unsetenv("SCD_AXES_THREADS");
  EXPECT_GE(worker_count(), 1u);
}

}  // namespace
}  // namespace scdaxes
