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

#ifndef FAIRMT_BIAS_ANALYZER_H_
#define FAIRMT_BIAS_ANALYZER_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fairmt/corpus.h"
#include "fairmt/tone.h"

namespace fairmt {

enum class ViolationReason { kNone, kToneMismatch, kSentimentMismatch };

std::string_view ReasonName(ViolationReason r);
ViolationReason ParseReason(std::string_view name);

struct Verdict {
  std::string pair_id;
  MrId mr = MrId::kMR1;
  GeneratorKind generator = GeneratorKind::kGenFair;
  // True when a report was missing (failed model call); such pairs are
  // neither violated nor counted in denominators.
  bool excluded = false;
  Tone tone_src = Tone::kNeutral;
  Tone tone_fup = Tone::kNeutral;
  Sentiment sentiment_src = Sentiment::kNeutral;
  Sentiment sentiment_fup = Sentiment::kNeutral;
  bool violated = false;
  ViolationReason reason = ViolationReason::kNone;

  bool operator==(const Verdict&) const = default;
};

Verdict CheckPair(const TestPair& pair, const std::optional<ToneReport>& src,
                  const std::optional<ToneReport>& fup);

enum class GroupBy { kMr, kGenerator, kMrGenerator };

struct FdrReport {
  std::string mr;         // "ALL" when not grouped by relation
  std::string generator;  // "ALL" when not grouped by generator
  uint64_t fault_pairs = 0;
  uint64_t total_pairs = 0;
  uint64_t excluded_pairs = 0;
  double fdr = 0;

  bool operator==(const FdrReport&) const = default;
};

// One row per non-empty group, in (mr, generator) order. Groups with only
// excluded pairs are reported with total_pairs == 0 and fdr == 0.
std::vector<FdrReport> Aggregate(const std::vector<Verdict>& verdicts,
                                 GroupBy group_by,
                                 const std::vector<MrId>& exclude_mrs = {});

// Fault pairs over all verdicts (B_total).
uint64_t TotalFaults(const std::vector<Verdict>& verdicts);

std::string VerdictsToJsonl(const std::vector<Verdict>& verdicts);
std::vector<Verdict> ParseVerdicts(std::string_view jsonl);

// "mr,generator,fault_pairs,total_pairs,fdr" with per-(mr,generator) rows,
// per-mr rows (generator ALL), per-generator rows (mr ALL) and a final
// ALL,ALL row.
std::string FdrCsv(const std::vector<Verdict>& verdicts,
                   const std::vector<MrId>& exclude_mrs = {});

// Plot-ready: one row per relation, one column per generator.
std::string FdrByMrCsv(const std::vector<Verdict>& verdicts);

// Human-readable table including excluded counts.
std::string FdrTable(const std::vector<Verdict>& verdicts,
                     const std::vector<MrId>& exclude_mrs = {});

}  // namespace fairmt

#endif  // FAIRMT_BIAS_ANALYZER_H_
