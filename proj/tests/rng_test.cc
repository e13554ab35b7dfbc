// Copyright 2026 The fairmt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "fairmt/rng.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "gtest/gtest.h"

namespace fairmt {
namespace {

TEST(RngTest, SameSeedSameStream) {
  Rng a(42), b(42), c(43);
  std::vector<uint64_t> xa, xb, xc;
  for (int i = 0; i < 16; ++i) {
    xa.push_back(a.Next());
    xb.push_back(b.Next());
    xc.push_back(c.Next());
  }
  EXPECT_EQ(xa, xb);
  EXPECT_NE(xa, xc);
}

TEST(RngTest, UniformStaysInRange) {
  Rng rng(1);
  for (uint64_t n : {1u, 2u, 3u, 7u, 1000u}) {
    for (int i = 0; i < 500; ++i) EXPECT_LT(rng.Uniform(n), n);
  }
  for (int i = 0; i < 500; ++i) {
    double d = rng.UniformDouble();
    EXPECT_GE(d, 0.0);
    EXPECT_LT(d, 1.0);
  }
}

TEST(RngTest, WeightedNeverPicksZeroWeight) {
  Rng rng(5);
  std::vector<double> w = {0.0, 1.0, 0.0, 3.0};
  int counts[4] = {0, 0, 0, 0};
  for (int i = 0; i < 4000; ++i) ++counts[rng.Weighted(w)];
  EXPECT_EQ(counts[0], 0);
  EXPECT_EQ(counts[2], 0);
  // Expected split is 1000/3000; 5 sigma is about 137.
  EXPECT_NEAR(counts[1], 1000, 140);
  EXPECT_NEAR(counts[3], 3000, 140);
}

TEST(RngTest, ShuffleIsPermutation) {
  Rng rng(9);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<int> v(trial);
    for (int i = 0; i < trial; ++i) v[i] = i;
    std::vector<int> s = v;
    rng.Shuffle(s);
    std::sort(s.begin(), s.end());
    EXPECT_EQ(s, v);
  }
}

TEST(RngTest, SampleIndicesDistinctSortedInRange) {
  Rng rng(11);
  for (uint64_t n : {0u, 1u, 5u, 100u, 3600u}) {
    for (uint64_t k : {0u, 1u, 3u, 50u, 200u, 5000u}) {
      std::vector<uint64_t> s = rng.SampleIndices(n, k);
      EXPECT_EQ(s.size(), std::min(n, k));
      EXPECT_TRUE(std::is_sorted(s.begin(), s.end()));
      EXPECT_EQ(std::set<uint64_t>(s.begin(), s.end()).size(), s.size());
      for (uint64_t x : s) EXPECT_LT(x, n);
    }
  }
}

TEST(RngTest, SampleIndicesCoversRangeRoughlyUniformly) {
  // 200 of 3600, repeated: each index should be hit about 200/3600 of the
  // time, and samples must not cluster at the start of the range.
  std::vector<int> hits(3600, 0);
  for (uint64_t seed = 0; seed < 200; ++seed) {
    Rng rng(seed);
    for (uint64_t x : rng.SampleIndices(3600, 200)) ++hits[x];
  }
  int first_half = 0;
  for (int i = 0; i < 1800; ++i) first_half += hits[i];
  EXPECT_NEAR(first_half, 20000, 600);
}

TEST(DeriveSeedTest, DependsOnSeedAndKey) {
  EXPECT_EQ(DeriveSeed(7, "a"), DeriveSeed(7, "a"));
  EXPECT_NE(DeriveSeed(7, "a"), DeriveSeed(7, "b"));
  EXPECT_NE(DeriveSeed(7, "a"), DeriveSeed(8, "a"));
  std::set<uint64_t> seen;
  for (int i = 0; i < 1000; ++i) seen.insert(DeriveSeed(1, std::to_string(i)));
  EXPECT_EQ(seen.size(), 1000u);
}

}  // namespace
}  // namespace fairmt
