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

#ifndef FAIRMT_METRICS_H_
#define FAIRMT_METRICS_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fairmt/corpus.h"
#include "fairmt/scorers.h"

namespace fairmt {

inline constexpr int kMetricVersion = 1;
inline constexpr uint64_t kDefaultSampleN = 50000;

// Token-level Levenshtein distance divided by the longer token count.
double NormalizedTokenDistance(const std::vector<std::string>& a,
                               const std::vector<std::string>& b);

// Up to `sample_n` distinct unordered index pairs (i < j) over n items,
// seeded, in ascending order. All pairs when there are few enough.
std::vector<std::pair<size_t, size_t>> SamplePairs(size_t n, uint64_t sample_n,
                                                   uint64_t seed);

// Cases sorted by id with normalized-text duplicates dropped. Scores are
// computed over this canonical list, which makes them independent of corpus
// order and unaffected by repeated sentences.
std::vector<const TestCase*> CanonicalCases(const Corpus& corpus);

// Seeded subset of `n` cases, drawn from the canonical order.
Corpus SampleCases(const Corpus& corpus, size_t n, uint64_t seed);

// The following throw ValidationError when the corpus has fewer than two
// cases.
double SyntacticDiversity(const Corpus& corpus, uint64_t sample_n,
                          uint64_t seed);
double SemanticDiversity(const Corpus& corpus, Embedder& embedder,
                         uint64_t sample_n, uint64_t seed);

// Mean perplexity over up to `sample_n` cases; throws on an empty corpus.
double SyntacticCoherence(const Corpus& corpus, PerplexityScorer& scorer,
                          uint64_t sample_n, uint64_t seed);

struct CoherenceResult {
  double score = 0;
  uint64_t compared = 0;
  uint64_t skipped = 0;
};

// Mean cosine between each case and its reference: derived cases are
// compared with the base case their lineage starts from, base cases with
// their attribute-free scenario. Cases without bindings are skipped.
CoherenceResult SemanticCoherence(const Corpus& corpus, const Catalog& catalog,
                                  Embedder& embedder);

struct MetricsReport {
  std::string generator;
  double syntactic_diversity = 0;
  double semantic_diversity = 0;
  double syntactic_coherence = 0;
  double semantic_coherence = 0;
  uint64_t sample_size = 0;
  uint64_t coherence_skipped = 0;
  uint64_t seed = 0;
  int metric_version = kMetricVersion;
  std::string embedder;
  std::string scorer;
};

MetricsReport ComputeMetrics(const Corpus& corpus, const Catalog& catalog,
                             Embedder& embedder, PerplexityScorer& scorer,
                             uint64_t sample_n, uint64_t seed);

std::string MetricsCsv(const std::vector<MetricsReport>& reports);
std::string MetricsTable(const std::vector<MetricsReport>& reports);

}  // namespace fairmt

#endif  // FAIRMT_METRICS_H_
