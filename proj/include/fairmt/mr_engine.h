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

#ifndef FAIRMT_MR_ENGINE_H_
#define FAIRMT_MR_ENGINE_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fairmt/catalog.h"
#include "fairmt/corpus.h"
#include "fairmt/rng.h"

namespace fairmt {

RelationSpec ExpectedRelation(MrId mr);

// Main-predicate rewrites used for the outcome flip, in priority order.
struct PredicateRewrite {
  std::string_view from;
  std::string_view to;
};
const std::vector<PredicateRewrite>& PredicateRewrites();

// Categories that act as the head noun of their phrase (they carry a removal
// fallback) stay in place when attributes are reordered.
bool IsHeadCategory(const Catalog& catalog, std::string_view category);

// Derives the follow-up case for `mr`. Returns std::nullopt when the case
// does not meet the relation's structural requirement; `skip_reason` then
// says why.
std::optional<TestPair> ApplyMr(const TestCase& source, MrId mr,
                                const Catalog& catalog, Rng& rng,
                                std::string* skip_reason = nullptr);

struct PairSkip {
  std::string case_id;
  MrId mr;
  std::string reason;
};

// Pairs for every (case, mr), ordered by (source id, mr). Each (case, mr)
// draws from its own derived seed, so the result does not depend on corpus
// order or on which relations are selected.
PairCorpus GeneratePairs(const Corpus& corpus, const std::vector<MrId>& mrs,
                         const Catalog& catalog, uint64_t seed,
                         std::vector<PairSkip>* skips = nullptr);

}  // namespace fairmt

#endif  // FAIRMT_MR_ENGINE_H_
