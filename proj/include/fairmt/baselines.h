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

#ifndef FAIRMT_BASELINES_H_
#define FAIRMT_BASELINES_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "fairmt/catalog.h"
#include "fairmt/corpus.h"
#include "fairmt/templates.h"

namespace fairmt {

// Every (template, value tuple) in lexicographic order of template id and
// value indices, truncated to `n`. Asking for more than exists returns
// everything and appends a warning.
Corpus GenerateTemplateBaseline(const std::vector<Template>& templates,
                                const Catalog& catalog, uint64_t n,
                                uint64_t seed,
                                std::vector<std::string>* warnings = nullptr);

struct AstraeaGrammar {
  std::vector<std::string> person_categories;
  size_t person_count = 3;
  // Surface form used for each person category (default 0).
  std::map<std::string, int> person_forms;
  std::string occupation_category = "OCCUPATION";
  std::string economic_category = "ECONOMIC CONDITIONS";
  std::vector<std::string> verbs;
  std::vector<std::string> objects;
};

// category -> value id -> probability; each category sums to 1.
using ProbabilityTable = std::map<std::string, std::map<std::string, double>>;

struct AstraeaSpec {
  AstraeaGrammar grammar;
  ProbabilityTable probs;
};

// Parses grammar and weights together; weights are normalized per category
// and default to uniform. Throws ConfigError for an all-zero category or a
// weight naming an unknown value.
AstraeaSpec ParseAstraeaSpec(std::string_view json_text,
                             const Catalog& catalog);
AstraeaSpec LoadAstraeaSpec(const std::filesystem::path& path,
                            const Catalog& catalog);
std::filesystem::path DefaultAstraeaPath();

// Sentences of the form
//   "The PERSON, who is a(n) OCCUPATION from a(n) ECONOMIC background, VERB OBJECT."
// where PERSON joins values of distinct person categories.
Corpus GenerateAstraea(const AstraeaSpec& spec, const Catalog& catalog,
                       uint64_t n, uint64_t seed);

// True iff the case binds at least three distinct categories.
bool AstraeaValidate(const TestCase& c);

}  // namespace fairmt

#endif  // FAIRMT_BASELINES_H_
