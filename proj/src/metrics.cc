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

#include "fairmt/metrics.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <unordered_set>

#include "fairmt/errors.h"
#include "fairmt/rng.h"
#include "fairmt/text_util.h"

namespace fairmt {
namespace {

std::vector<const TestCase*> RequireTwo(const Corpus& corpus) {
  if (corpus.cases.size() < 2) {
    throw ValidationError("diversity needs at least two cases, got " +
                          std::to_string(corpus.cases.size()));
  }
  return CanonicalCases(corpus);
}

std::string Fixed(double x, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

}  // namespace

double NormalizedTokenDistance(const std::vector<std::string>& a,
                               const std::vector<std::string>& b) {
  size_t longest = std::max(a.size(), b.size());
  if (longest == 0) return 0;
  std::vector<size_t> prev(b.size() + 1), cur(b.size() + 1);
  for (size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (size_t j = 1; j <= b.size(); ++j) {
      size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return static_cast<double>(prev[b.size()]) / static_cast<double>(longest);
}

std::vector<std::pair<size_t, size_t>> SamplePairs(size_t n, uint64_t sample_n,
                                                   uint64_t seed) {
  std::vector<std::pair<size_t, size_t>> out;
  if (n < 2) return out;
  uint64_t total = static_cast<uint64_t>(n) * (n - 1) / 2;
  std::vector<uint64_t> picks;
  if (total <= sample_n) {
    picks.resize(total);
    for (uint64_t k = 0; k < total; ++k) picks[k] = k;
  } else {
    Rng rng(DeriveSeed(seed, "metric-pairs"));
    picks = rng.SampleIndices(total, sample_n);
  }
  out.reserve(picks.size());
  size_t i = 0;
  uint64_t row_start = 0;
  for (uint64_t k : picks) {
    while (k >= row_start + (n - 1 - i)) {
      row_start += n - 1 - i;
      ++i;
    }
    out.emplace_back(i, i + 1 + static_cast<size_t>(k - row_start));
  }
  return out;
}

std::vector<const TestCase*> CanonicalCases(const Corpus& corpus) {
  std::vector<const TestCase*> sorted;
  sorted.reserve(corpus.cases.size());
  for (const TestCase& c : corpus.cases) sorted.push_back(&c);
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const TestCase* a, const TestCase* b) {
                     return a->id < b->id;
                   });
  std::vector<const TestCase*> out;
  std::unordered_set<std::string> seen;
  for (const TestCase* c : sorted) {
    if (seen.insert(NormalizeText(c->text)).second) out.push_back(c);
  }
  return out;
}

Corpus SampleCases(const Corpus& corpus, size_t n, uint64_t seed) {
  std::vector<const TestCase*> canon = CanonicalCases(corpus);
  Corpus out;
  out.header = corpus.header;
  Rng rng(DeriveSeed(seed, "metric-cases"));
  for (uint64_t i : rng.SampleIndices(canon.size(),
                                      std::min<uint64_t>(n, canon.size()))) {
    out.cases.push_back(*canon[i]);
  }
  return out;
}

double SyntacticDiversity(const Corpus& corpus, uint64_t sample_n,
                          uint64_t seed) {
  std::vector<const TestCase*> cases = RequireTwo(corpus);
  auto pairs = SamplePairs(cases.size(), sample_n, seed);
  if (pairs.empty()) return 0;
  std::vector<std::vector<std::string>> tokens(cases.size());
  std::vector<bool> ready(cases.size(), false);
  auto tok = [&](size_t i) -> const std::vector<std::string>& {
    if (!ready[i]) {
      tokens[i] = WordTokens(cases[i]->text);
      ready[i] = true;
    }
    return tokens[i];
  };
  double sum = 0;
  for (auto [i, j] : pairs) sum += NormalizedTokenDistance(tok(i), tok(j));
  return 100.0 * sum / static_cast<double>(pairs.size());
}

double SemanticDiversity(const Corpus& corpus, Embedder& embedder,
                         uint64_t sample_n, uint64_t seed) {
  std::vector<const TestCase*> cases = RequireTwo(corpus);
  auto pairs = SamplePairs(cases.size(), sample_n, seed);
  if (pairs.empty()) return 0;
  std::map<size_t, Vector> vectors;
  auto vec = [&](size_t i) -> const Vector& {
    auto it = vectors.find(i);
    if (it == vectors.end()) {
      it = vectors.emplace(i, embedder.Embed(cases[i]->text)).first;
    }
    return it->second;
  };
  double sum = 0;
  for (auto [i, j] : pairs) sum += 1.0 - Cosine(vec(i), vec(j));
  return 100.0 * sum / static_cast<double>(pairs.size());
}

double SyntacticCoherence(const Corpus& corpus, PerplexityScorer& scorer,
                          uint64_t sample_n, uint64_t seed) {
  if (corpus.cases.empty()) {
    throw ValidationError("coherence of an empty corpus");
  }
  std::vector<const TestCase*> cases = CanonicalCases(corpus);
  std::vector<uint64_t> picks;
  if (cases.size() <= sample_n) {
    picks.resize(cases.size());
    for (size_t i = 0; i < cases.size(); ++i) picks[i] = i;
  } else {
    Rng rng(DeriveSeed(seed, "metric-perplexity"));
    picks = rng.SampleIndices(cases.size(), sample_n);
  }
  double sum = 0;
  for (uint64_t i : picks) sum += scorer.Perplexity(cases[i]->text);
  return sum / static_cast<double>(picks.size());
}

CoherenceResult SemanticCoherence(const Corpus& corpus, const Catalog& catalog,
                                  Embedder& embedder) {
  CoherenceResult result;
  double sum = 0;
  for (const TestCase* c : CanonicalCases(corpus)) {
    if (c->bindings().empty()) {
      ++result.skipped;
      continue;
    }
    Sentence ref = c->sentence;
    if (c->lineage.steps.empty()) {
      while (!ref.bindings().empty()) RemoveBinding(catalog, ref, 0);
    } else {
      for (Binding& b : ref.mutable_bindings()) {
        for (const DerivationStep& s : c->lineage.steps) {
          if (s.category == b.category) {
            b.value = s.from;
            break;
          }
        }
        b.modifier = Modifier::kNone;
      }
    }
    std::string ref_text;
    try {
      ref_text = Render(catalog, ref);
    } catch (const Error&) {
      ++result.skipped;
      continue;
    }
    Vector own = embedder.Embed(c->text);
    sum += Cosine(own, embedder.Embed(ref_text));
    ++result.compared;
  }
  result.score =
      result.compared == 0 ? 0 : sum / static_cast<double>(result.compared);
  return result;
}

MetricsReport ComputeMetrics(const Corpus& corpus, const Catalog& catalog,
                             Embedder& embedder, PerplexityScorer& scorer,
                             uint64_t sample_n, uint64_t seed) {
  MetricsReport r;
  r.generator = corpus.header.generator.empty() && !corpus.cases.empty()
                    ? std::string(GeneratorName(corpus.cases[0].generator))
                    : corpus.header.generator;
  r.syntactic_diversity = SyntacticDiversity(corpus, sample_n, seed);
  r.semantic_diversity = SemanticDiversity(corpus, embedder, sample_n, seed);
  r.syntactic_coherence = SyntacticCoherence(corpus, scorer, sample_n, seed);
  CoherenceResult coh = SemanticCoherence(corpus, catalog, embedder);
  r.semantic_coherence = coh.score;
  r.coherence_skipped = coh.skipped;
  r.sample_size = CanonicalCases(corpus).size();
  r.seed = seed;
  r.embedder = embedder.Name();
  r.scorer = scorer.Name();
  return r;
}

std::string MetricsCsv(const std::vector<MetricsReport>& reports) {
  std::string out =
      "generator,syntactic_diversity,semantic_diversity,syntactic_coherence,"
      "semantic_coherence,sample_size,coherence_skipped,seed,metric_version,"
      "embedder,scorer\n";
  for (const MetricsReport& r : reports) {
    out += r.generator + "," + Fixed(r.syntactic_diversity, 4) + "," +
           Fixed(r.semantic_diversity, 4) + "," +
           Fixed(r.syntactic_coherence, 4) + "," +
           Fixed(r.semantic_coherence, 6) + "," + std::to_string(r.sample_size) +
           "," + std::to_string(r.coherence_skipped) + "," +
           std::to_string(r.seed) + "," + std::to_string(r.metric_version) +
           "," + r.embedder + "," + r.scorer + "\n";
  }
  return out;
}

std::string MetricsTable(const std::vector<MetricsReport>& reports) {
  std::string out;
  char line[200];
  std::snprintf(line, sizeof line, "%-10s %12s %12s %14s %12s %8s\n",
                "GENERATOR", "SYN_DIV", "SEM_DIV", "SYN_COH(PPL)", "SEM_COH",
                "N");
  out += line;
  for (const MetricsReport& r : reports) {
    std::snprintf(line, sizeof line, "%-10s %12.2f %12.2f %14.2f %12.4f %8llu\n",
                  r.generator.c_str(), r.syntactic_diversity,
                  r.semantic_diversity, r.syntactic_coherence,
                  r.semantic_coherence,
                  static_cast<unsigned long long>(r.sample_size));
    out += line;
  }
  bool builtin = false;
  for (const MetricsReport& r : reports) {
    builtin = builtin || r.embedder.starts_with("builtin") ||
              r.scorer.starts_with("builtin");
  }
  out += "metric_version = " + std::to_string(kMetricVersion) + "\n";
  if (builtin) {
    out += "note: builtin offline scorers in use; compare orderings, not "
           "absolute values\n";
  }
  return out;
}

}  // namespace fairmt
