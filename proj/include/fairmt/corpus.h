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

#ifndef FAIRMT_CORPUS_H_
#define FAIRMT_CORPUS_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fairmt/catalog.h"
#include "fairmt/sentence.h"

namespace fairmt {

inline constexpr int kSchemaVersion = 1;

enum class GeneratorKind { kGenFair, kTemplate, kAstraea };

std::string_view GeneratorName(GeneratorKind g);
GeneratorKind ParseGenerator(std::string_view name);

enum class StepKind {
  kEp,
  kIntensify,
  kReduce,
  kNegate,
  kSubstitute,
  kBva,
};

std::string_view StepName(StepKind k);
StepKind ParseStep(std::string_view name);

struct DerivationStep {
  StepKind kind = StepKind::kEp;
  std::string category;
  std::string from;
  std::string to;

  bool operator==(const DerivationStep&) const = default;
};

struct Lineage {
  std::string template_id;
  std::vector<DerivationStep> steps;  // application order

  bool operator==(const Lineage&) const = default;
};

struct TestCase {
  std::string id;
  std::string text;
  GeneratorKind generator = GeneratorKind::kGenFair;
  Lineage lineage;
  Sentence sentence;

  const std::vector<Binding>& bindings() const { return sentence.bindings(); }
  bool operator==(const TestCase&) const = default;
};

// Content hash of (text, generator).
std::string CaseId(std::string_view text, GeneratorKind generator);

// Renders `sentence` and assembles a case with a fresh id.
TestCase MakeCase(const Catalog& catalog, Sentence sentence,
                  GeneratorKind generator, Lineage lineage);

// Re-renders after the sentence was edited and recomputes the id.
void Refresh(const Catalog& catalog, TestCase& c);

// Structural checks that need no catalog: non-empty text, id matches
// content, spans in bounds, non-overlapping and in order. Returns the
// first problem found.
std::optional<std::string> CheckCase(const TestCase& c);

// As above, plus every span slices the text to the binding's surface form.
std::optional<std::string> CheckCase(const Catalog& catalog,
                                     const TestCase& c);

enum class MrId { kMR1, kMR2, kMR3, kMR4, kMR5, kMR6, kMR7, kMR8 };

inline constexpr MrId kAllMrs[] = {MrId::kMR1, MrId::kMR2, MrId::kMR3,
                                   MrId::kMR4, MrId::kMR5, MrId::kMR6,
                                   MrId::kMR7, MrId::kMR8};

std::string_view MrName(MrId mr);
MrId ParseMr(std::string_view name);
// "MR1,MR3" -> {MR1, MR3}. Throws ConfigError on unknown names.
std::vector<MrId> ParseMrList(std::string_view list);

struct RelationSpec {
  bool requires_tone_equal = true;
  bool requires_sentiment_equal = false;

  bool operator==(const RelationSpec&) const = default;
};

struct TestPair {
  std::string pair_id;
  TestCase source;
  TestCase followup;
  MrId mr = MrId::kMR1;
  RelationSpec relation;

  bool operator==(const TestPair&) const = default;
};

std::string PairId(const TestCase& source, MrId mr, const TestCase& followup);

struct InputRef {
  std::string name;
  std::string sha256;

  bool operator==(const InputRef&) const = default;
};

struct CorpusHeader {
  int schema_version = kSchemaVersion;
  std::string kind = "cases";  // "cases" or "pairs"
  std::string generator;       // empty for mixed corpora
  uint64_t seed = 0;
  std::string catalog_hash;
  std::string config_hash;
  std::string tool_version;
  std::vector<InputRef> inputs;

  bool operator==(const CorpusHeader&) const = default;
};

struct Corpus {
  CorpusHeader header;
  std::vector<TestCase> cases;

  bool operator==(const Corpus&) const = default;
};

struct PairCorpus {
  CorpusHeader header;
  std::vector<TestPair> pairs;

  bool operator==(const PairCorpus&) const = default;
};

CorpusHeader MakeHeader(std::string kind, std::string generator, uint64_t seed,
                        const Catalog& catalog, std::string_view config_text);

// Stable first-occurrence deduplication on normalized text.
Corpus Dedup(const Corpus& corpus);

// First min(n, size) cases; header kept.
Corpus TakeFirst(const Corpus& corpus, size_t n);

// JSON Lines: header record first, then one record per case or pair.
std::string SerializeCorpus(const Corpus& corpus);
std::string SerializePairCorpus(const PairCorpus& corpus);

void WriteCorpus(const Corpus& corpus, const std::filesystem::path& path);
void WritePairCorpus(const PairCorpus& corpus,
                     const std::filesystem::path& path);

// Throws ConfigError naming the first bad line. A tool-version mismatch is
// reported through `warnings`, not as a failure.
Corpus ParseCorpus(std::string_view text,
                   std::vector<std::string>* warnings = nullptr);
PairCorpus ParsePairCorpus(std::string_view text,
                           std::vector<std::string>* warnings = nullptr);

Corpus ReadCorpus(const std::filesystem::path& path,
                  std::vector<std::string>* warnings = nullptr);
PairCorpus ReadPairCorpus(const std::filesystem::path& path,
                          std::vector<std::string>* warnings = nullptr);

}  // namespace fairmt

#endif  // FAIRMT_CORPUS_H_
