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

#ifndef FAIRMT_GENFAIR_H_
#define FAIRMT_GENFAIR_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fairmt/catalog.h"
#include "fairmt/corpus.h"
#include "fairmt/rng.h"
#include "fairmt/templates.h"

namespace fairmt {

enum class MutationOp { kIntensify, kReduce, kNegate, kSubstitute };

std::string_view MutationOpName(MutationOp op);
MutationOp ParseMutationOp(std::string_view name);

struct GenConfig {
  uint64_t seed = 0;
  // Total base cases drawn from the templates; 0 enumerates every product.
  uint64_t base_cases = 3000;
  // Empty means every bound category.
  std::vector<std::string> ep_categories;
  std::vector<MutationOp> mutation_ops = {MutationOp::kIntensify,
                                          MutationOp::kReduce,
                                          MutationOp::kNegate,
                                          MutationOp::kSubstitute};
  // Empty means every bound ordered category.
  std::vector<std::string> bva_categories;
  std::optional<uint64_t> max_cases;

  bool operator==(const GenConfig&) const = default;
};

GenConfig ParseGenConfig(std::string_view json_text);
std::string SerializeGenConfig(const GenConfig& config);
GenConfig LoadGenConfig(const std::filesystem::path& path);
std::filesystem::path DefaultGenConfigPath();

// Splits `total` across templates with the given product sizes: equal
// shares, with templates smaller than their share contributing everything
// and the surplus going to the rest. Earlier templates absorb remainders.
std::vector<uint64_t> BaseQuotas(const std::vector<uint64_t>& products,
                                 uint64_t total);

// Base cases (no derivation steps). `base_cases` == 0 means exhaustive.
Corpus InstantiateTemplates(const std::vector<Template>& templates,
                            const Catalog& catalog, uint64_t seed,
                            uint64_t base_cases);

// One variant per other value of each requested category. Unbound
// categories are skipped with a message appended to `warnings`.
std::vector<TestCase> ExpandEquivalence(const TestCase& c,
                                        const Catalog& catalog,
                                        const std::vector<std::string>& categories,
                                        std::vector<std::string>* warnings);

enum class Direction { kIntensify, kReduce };

// std::nullopt when the bound value has no way to move in `direction`.
std::optional<TestCase> MutateIntensify(const TestCase& c,
                                        const Catalog& catalog,
                                        std::string_view category,
                                        Direction direction);

// std::nullopt when the binding is already negated.
std::optional<TestCase> MutateNegate(const TestCase& c, const Catalog& catalog,
                                     std::string_view category);

TestCase MutateSubstitute(const TestCase& c, const Catalog& catalog,
                          std::string_view category, Rng& rng);

// Variants at the scale's extremes, skipping the current value. Throws
// NotOrderedError for nominal categories.
std::vector<TestCase> ApplyBva(const TestCase& c, const Catalog& catalog,
                               std::string_view category);

// Rebuilds the case from its template and lineage. Returns a description
// of the mismatch, or std::nullopt when the replay reproduces the case.
std::optional<std::string> ReplayLineage(
    const TestCase& c, const std::map<std::string, const Template*>& templates,
    const Catalog& catalog);

struct GenStats {
  uint64_t base = 0;
  uint64_t ep = 0;
  uint64_t mutation = 0;
  uint64_t bva = 0;
  uint64_t duplicates = 0;
  uint64_t skipped = 0;
};

struct GenResult {
  Corpus corpus;
  GenStats stats;
  std::vector<std::string> log;
};

// Base cases first, then equivalence variants, then mutations of those
// variants, then boundary variants of the mutations. Within a stage,
// parents are visited round-robin (first candidate of every parent, then
// the second, ...). With `max_cases`, the budget left after the base cases
// is split evenly over the three derived stages, unused budget rolling
// forward.
GenResult GenerateGenFair(const std::vector<Template>& templates,
                          const Catalog& catalog, const GenConfig& config);

}  // namespace fairmt

#endif  // FAIRMT_GENFAIR_H_
