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

#ifndef FAIRMT_RNG_H_
#define FAIRMT_RNG_H_

#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace fairmt {

// Seeded generator with platform-independent derived operations. The
// standard distributions are implementation-defined, so bounded integers,
// doubles and shuffles are computed here from raw engine output.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t Next() { return engine_(); }

  // Uniform integer in [0, n). n must be positive.
  uint64_t Uniform(uint64_t n);

  // Uniform double in [0, 1) with 53 bits of precision.
  double UniformDouble();

  // Index drawn proportionally to `weights`; weights must be non-negative
  // with a positive sum.
  size_t Weighted(std::span<const double> weights);

  template <typename T>
  void Shuffle(std::vector<T>& items) {
    for (size_t i = items.size(); i > 1; --i) {
      size_t j = Uniform(i);
      std::swap(items[i - 1], items[j]);
    }
  }

  // k distinct indices from [0, n), ascending.
  std::vector<uint64_t> SampleIndices(uint64_t n, uint64_t k);

 private:
  std::mt19937_64 engine_;
};

// Mixes a run seed with a key so independent work items get stable,
// schedule-independent streams.
uint64_t DeriveSeed(uint64_t seed, std::string_view key);

}  // namespace fairmt

#endif  // FAIRMT_RNG_H_
