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
#include <cassert>
#include <unordered_set>

#include "fairmt/text_util.h"

namespace fairmt {

uint64_t Rng::Uniform(uint64_t n) {
  assert(n > 0);
  // Rejection sampling removes modulo bias.
  const uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % n;
}

double Rng::UniformDouble() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

size_t Rng::Weighted(std::span<const double> weights) {
  double total = 0.0;
  for (double w : weights) total += w;
  assert(total > 0.0);
  double target = UniformDouble() * total;
  double acc = 0.0;
  size_t last_positive = 0;
  for (size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] <= 0.0) continue;
    acc += weights[i];
    last_positive = i;
    if (target < acc) return i;
  }
  return last_positive;
}

std::vector<uint64_t> Rng::SampleIndices(uint64_t n, uint64_t k) {
  k = std::min(k, n);
  std::vector<uint64_t> out;
  out.reserve(k);
  if (k * 2 >= n) {
    std::vector<uint64_t> all(n);
    for (uint64_t i = 0; i < n; ++i) all[i] = i;
    // Partial Fisher-Yates over the prefix.
    for (uint64_t i = 0; i < k; ++i) {
      uint64_t j = i + Uniform(n - i);
      std::swap(all[i], all[j]);
    }
    out.assign(all.begin(), all.begin() + static_cast<ptrdiff_t>(k));
  } else {
    // Floyd's algorithm.
    std::unordered_set<uint64_t> chosen;
    for (uint64_t j = n - k; j < n; ++j) {
      uint64_t t = Uniform(j + 1);
      if (!chosen.insert(t).second) chosen.insert(j);
    }
    out.assign(chosen.begin(), chosen.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

uint64_t DeriveSeed(uint64_t seed, std::string_view key) {
  // splitmix64 finalizer over the seed xor the key hash.
  uint64_t z = seed ^ Fnv1a64(key);
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace fairmt
