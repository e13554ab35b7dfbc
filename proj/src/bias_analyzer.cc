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

#include "fairmt/bias_analyzer.h"

#include <algorithm>
#include <cstdio>
#include <tuple>

#include "fairmt/errors.h"
#include "fairmt/text_util.h"
#include "json.hpp"

namespace fairmt {
namespace {

using Json = nlohmann::ordered_json;

constexpr GeneratorKind kGenerators[] = {
    GeneratorKind::kGenFair, GeneratorKind::kTemplate, GeneratorKind::kAstraea};

std::string FormatRate(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

bool Excluded(const std::vector<MrId>& exclude, MrId mr) {
  return std::find(exclude.begin(), exclude.end(), mr) != exclude.end();
}

struct Tally {
  uint64_t fault = 0;
  uint64_t total = 0;
  uint64_t excluded = 0;

  void Add(const Verdict& v) {
    if (v.excluded) {
      ++excluded;
      return;
    }
    ++total;
    if (v.violated) ++fault;
  }
};

FdrReport ToReport(std::string mr, std::string generator, const Tally& t) {
  FdrReport r;
  r.mr = std::move(mr);
  r.generator = std::move(generator);
  r.fault_pairs = t.fault;
  r.total_pairs = t.total;
  r.excluded_pairs = t.excluded;
  r.fdr = t.total == 0 ? 0.0
                       : static_cast<double>(t.fault) /
                             static_cast<double>(t.total);
  return r;
}

std::string CsvRow(const FdrReport& r) {
  return r.mr + "," + r.generator + "," + std::to_string(r.fault_pairs) + "," +
         std::to_string(r.total_pairs) + "," + FormatRate(r.fdr) + "\n";
}

}  // namespace

std::string_view ReasonName(ViolationReason r) {
  switch (r) {
    case ViolationReason::kNone:
      return "none";
    case ViolationReason::kToneMismatch:
      return "tone_mismatch";
    case ViolationReason::kSentimentMismatch:
      return "sentiment_mismatch";
  }
  return "none";
}

ViolationReason ParseReason(std::string_view name) {
  for (ViolationReason r :
       {ViolationReason::kNone, ViolationReason::kToneMismatch,
        ViolationReason::kSentimentMismatch}) {
    if (ReasonName(r) == name) return r;
  }
  throw ConfigError("unknown verdict reason '" + std::string(name) + "'");
}

Verdict CheckPair(const TestPair& pair, const std::optional<ToneReport>& src,
                  const std::optional<ToneReport>& fup) {
  Verdict v;
  v.pair_id = pair.pair_id;
  v.mr = pair.mr;
  v.generator = pair.source.generator;
  if (!src || !fup) {
    v.excluded = true;
    return v;
  }
  v.tone_src = src->tone;
  v.tone_fup = fup->tone;
  v.sentiment_src = src->sentiment;
  v.sentiment_fup = fup->sentiment;
  if (pair.relation.requires_tone_equal && v.tone_src != v.tone_fup) {
    v.violated = true;
    v.reason = ViolationReason::kToneMismatch;
  } else if (pair.relation.requires_sentiment_equal &&
             v.sentiment_src != v.sentiment_fup) {
    v.violated = true;
    v.reason = ViolationReason::kSentimentMismatch;
  }
  return v;
}

std::vector<FdrReport> Aggregate(const std::vector<Verdict>& verdicts,
                                 GroupBy group_by,
                                 const std::vector<MrId>& exclude_mrs) {
  std::map<std::pair<int, int>, Tally> groups;
  for (const Verdict& v : verdicts) {
    if (Excluded(exclude_mrs, v.mr)) continue;
    int mr = group_by == GroupBy::kGenerator ? -1 : static_cast<int>(v.mr);
    int gen =
        group_by == GroupBy::kMr ? -1 : static_cast<int>(v.generator);
    groups[{mr, gen}].Add(v);
  }
  std::vector<FdrReport> out;
  for (const auto& [key, tally] : groups) {
    std::string mr = key.first < 0
                         ? "ALL"
                         : std::string(MrName(static_cast<MrId>(key.first)));
    std::string gen =
        key.second < 0
            ? "ALL"
            : std::string(GeneratorName(static_cast<GeneratorKind>(key.second)));
    out.push_back(ToReport(mr, gen, tally));
  }
  return out;
}

uint64_t TotalFaults(const std::vector<Verdict>& verdicts) {
  uint64_t n = 0;
  for (const Verdict& v : verdicts) n += v.violated ? 1 : 0;
  return n;
}

std::string VerdictsToJsonl(const std::vector<Verdict>& verdicts) {
  std::string out;
  for (const Verdict& v : verdicts) {
    Json j;
    j["pair_id"] = v.pair_id;
    j["mr"] = MrName(v.mr);
    j["generator"] = GeneratorName(v.generator);
    j["excluded"] = v.excluded;
    j["tone_src"] = ToneName(v.tone_src);
    j["tone_fup"] = ToneName(v.tone_fup);
    j["sentiment_src"] = SentimentName(v.sentiment_src);
    j["sentiment_fup"] = SentimentName(v.sentiment_fup);
    j["violated"] = v.violated;
    j["reason"] = ReasonName(v.reason);
    out += j.dump();
    out.push_back('\n');
  }
  return out;
}

std::vector<Verdict> ParseVerdicts(std::string_view jsonl) {
  std::vector<Verdict> out;
  int line_no = 0;
  for (const std::string& line : SplitOn(jsonl, '\n')) {
    ++line_no;
    if (Trim(line).empty()) continue;
    try {
      Json j = Json::parse(line);
      Verdict v;
      v.pair_id = j.at("pair_id").get<std::string>();
      v.mr = ParseMr(j.at("mr").get<std::string>());
      v.generator = ParseGenerator(j.at("generator").get<std::string>());
      v.excluded = j.at("excluded").get<bool>();
      v.tone_src = ParseTone(j.at("tone_src").get<std::string>());
      v.tone_fup = ParseTone(j.at("tone_fup").get<std::string>());
      v.sentiment_src = ParseSentiment(j.at("sentiment_src").get<std::string>());
      v.sentiment_fup = ParseSentiment(j.at("sentiment_fup").get<std::string>());
      v.violated = j.at("violated").get<bool>();
      v.reason = ParseReason(j.at("reason").get<std::string>());
      out.push_back(std::move(v));
    } catch (const Json::exception& e) {
      throw ConfigError("verdicts, line " + std::to_string(line_no) + ": " +
                        e.what());
    }
  }
  return out;
}

std::string FdrCsv(const std::vector<Verdict>& verdicts,
                   const std::vector<MrId>& exclude_mrs) {
  std::string out = "mr,generator,fault_pairs,total_pairs,fdr\n";
  for (GroupBy g : {GroupBy::kMrGenerator, GroupBy::kMr, GroupBy::kGenerator}) {
    for (const FdrReport& r : Aggregate(verdicts, g, exclude_mrs)) {
      out += CsvRow(r);
    }
  }
  Tally all;
  for (const Verdict& v : verdicts) {
    if (!Excluded(exclude_mrs, v.mr)) all.Add(v);
  }
  if (all.total + all.excluded > 0) out += CsvRow(ToReport("ALL", "ALL", all));
  return out;
}

std::string FdrByMrCsv(const std::vector<Verdict>& verdicts) {
  std::map<std::pair<int, int>, Tally> cells;
  for (const Verdict& v : verdicts) {
    cells[{static_cast<int>(v.mr), static_cast<int>(v.generator)}].Add(v);
  }
  std::string out = "mr";
  for (GeneratorKind g : kGenerators) out += "," + std::string(GeneratorName(g));
  out += "\n";
  for (MrId mr : kAllMrs) {
    std::string row(MrName(mr));
    bool any = false;
    for (GeneratorKind g : kGenerators) {
      row += ",";
      auto it = cells.find({static_cast<int>(mr), static_cast<int>(g)});
      if (it == cells.end() || it->second.total == 0) continue;
      row += FormatRate(ToReport("", "", it->second).fdr);
      any = true;
    }
    if (any) out += row + "\n";
  }
  return out;
}

std::string FdrTable(const std::vector<Verdict>& verdicts,
                     const std::vector<MrId>& exclude_mrs) {
  std::string out;
  char line[160];
  std::snprintf(line, sizeof line, "%-5s %-9s %12s %12s %9s %10s\n", "MR",
                "GENERATOR", "FAULT_PAIRS", "TOTAL_PAIRS", "FDR", "EXCLUDED");
  out += line;
  std::vector<FdrReport> rows = Aggregate(verdicts, GroupBy::kMrGenerator,
                                          exclude_mrs);
  for (GroupBy g : {GroupBy::kMr, GroupBy::kGenerator}) {
    for (FdrReport& r : Aggregate(verdicts, g, exclude_mrs)) {
      rows.push_back(std::move(r));
    }
  }
  for (const FdrReport& r : rows) {
    std::snprintf(line, sizeof line, "%-5s %-9s %12llu %12llu %9.4f %10llu\n",
                  r.mr.c_str(), r.generator.c_str(),
                  static_cast<unsigned long long>(r.fault_pairs),
                  static_cast<unsigned long long>(r.total_pairs), r.fdr,
                  static_cast<unsigned long long>(r.excluded_pairs));
    out += line;
  }
  uint64_t faults = 0;
  for (const Verdict& v : verdicts) {
    if (!Excluded(exclude_mrs, v.mr) && v.violated) ++faults;
  }
  out += "B_total = " + std::to_string(faults) + "\n";
  if (!exclude_mrs.empty()) {
    out += "excluded relations:";
    for (MrId mr : exclude_mrs) out += " " + std::string(MrName(mr));
    out += "\n";
  }
  return out;
}

}  // namespace fairmt
