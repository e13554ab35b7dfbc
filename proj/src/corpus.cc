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

#include "fairmt/corpus.h"

#include <map>
#include <set>
#include <memory>
#include <unordered_set>

#include "fairmt/errors.h"
#include "fairmt/text_util.h"
#include "json.hpp"

namespace fairmt {
namespace {

using Json = nlohmann::ordered_json;

std::string_view PronounName(PronounCase c) {
  switch (c) {
    case PronounCase::kSubject:
      return "subj";
    case PronounCase::kObject:
      return "obj";
    case PronounCase::kPossessive:
      return "poss";
  }
  return "poss";
}

PronounCase ParsePronoun(std::string_view name) {
  if (name == "subj") return PronounCase::kSubject;
  if (name == "obj") return PronounCase::kObject;
  if (name == "poss") return PronounCase::kPossessive;
  throw ConfigError("unknown pronoun case '" + std::string(name) + "'");
}

Json SkeletonJson(const Skeleton& sk) {
  Json segs = Json::array();
  for (const Segment& s : sk.segments) {
    Json j;
    switch (s.kind) {
      case Segment::Kind::kLiteral:
        j["lit"] = s.text;
        break;
      case Segment::Kind::kSlot:
        j["slot"] = true;
        break;
      case Segment::Kind::kPronoun:
        j["pron"] = PronounName(s.pronoun);
        break;
      case Segment::Kind::kArticle:
        j["art"] = s.capitalized ? "A" : "a";
        break;
    }
    if (s.group >= 0) j["g"] = s.group;
    segs.push_back(std::move(j));
  }
  Json groups = Json::array();
  for (const Group& g : sk.groups) {
    groups.push_back({{"parent", g.parent}, {"fallback", g.fallback}});
  }
  return {{"segments", std::move(segs)}, {"groups", std::move(groups)}};
}

Skeleton SkeletonFromJson(const Json& j) {
  Skeleton sk;
  for (const Json& s : j.at("segments")) {
    Segment seg;
    if (s.contains("lit")) {
      seg.kind = Segment::Kind::kLiteral;
      seg.text = s.at("lit").get<std::string>();
    } else if (s.contains("slot")) {
      seg.kind = Segment::Kind::kSlot;
    } else if (s.contains("pron")) {
      seg.kind = Segment::Kind::kPronoun;
      seg.pronoun = ParsePronoun(s.at("pron").get<std::string>());
    } else if (s.contains("art")) {
      seg.kind = Segment::Kind::kArticle;
      seg.capitalized = s.at("art").get<std::string>() == "A";
    } else {
      throw ConfigError("segment without a kind");
    }
    seg.group = s.value("g", -1);
    sk.segments.push_back(std::move(seg));
  }
  for (const Json& g : j.at("groups")) {
    sk.groups.push_back(
        {g.at("parent").get<int>(), g.at("fallback").get<std::string>()});
  }
  return sk;
}

// Skeletons are written once per file as "skeleton" records and referenced
// from cases by content hash.
class SkeletonTable {
 public:
  std::string Register(const Skeleton& sk) {
    Json j = SkeletonJson(sk);
    std::string key = ShortHash(j.dump());
    if (keys_.insert(key).second) {
      Json rec;
      rec["record"] = "skeleton";
      rec["key"] = key;
      rec["segments"] = j["segments"];
      rec["groups"] = j["groups"];
      records_ += rec.dump();
      records_.push_back('\n');
    }
    return key;
  }
  const std::string& records() const { return records_; }

 private:
  std::set<std::string> keys_;
  std::string records_;
};

Json CaseJson(const TestCase& c, SkeletonTable& table) {
  Json bindings = Json::array();
  for (const Binding& b : c.bindings()) {
    bindings.push_back({{"category", b.category},
                        {"value", b.value},
                        {"form", b.form},
                        {"modifier", ModifierName(b.modifier)},
                        {"begin", b.span.begin},
                        {"end", b.span.end}});
  }
  Json steps = Json::array();
  for (const DerivationStep& s : c.lineage.steps) {
    steps.push_back({{"kind", StepName(s.kind)},
                     {"category", s.category},
                     {"from", s.from},
                     {"to", s.to}});
  }
  Json j;
  j["id"] = c.id;
  j["generator"] = GeneratorName(c.generator);
  j["text"] = c.text;
  j["bindings"] = std::move(bindings);
  j["lineage"] = {{"template_id", c.lineage.template_id},
                  {"steps", std::move(steps)}};
  j["skeleton"] = table.Register(c.sentence.skeleton());
  return j;
}

// Skeleton records seen so far in a file, by key.
class SkeletonPool {
 public:
  void Add(const Json& rec) {
    std::string key = rec.at("key").get<std::string>();
    auto sk = std::make_shared<const Skeleton>(SkeletonFromJson(rec));
    if (ShortHash(SkeletonJson(*sk).dump()) != key) {
      throw ConfigError("skeleton record " + key + " does not match its key");
    }
    pool_[key] = std::move(sk);
  }
  std::shared_ptr<const Skeleton> Get(const std::string& key) const {
    auto it = pool_.find(key);
    if (it == pool_.end()) {
      throw ConfigError("reference to unknown skeleton " + key);
    }
    return it->second;
  }

 private:
  std::map<std::string, std::shared_ptr<const Skeleton>> pool_;
};

TestCase CaseFromJson(const Json& j, const SkeletonPool& pool) {
  TestCase c;
  c.id = j.at("id").get<std::string>();
  c.generator = ParseGenerator(j.at("generator").get<std::string>());
  c.text = j.at("text").get<std::string>();
  std::vector<Binding> bindings;
  for (const Json& b : j.at("bindings")) {
    Binding binding;
    binding.category = b.at("category").get<std::string>();
    binding.value = b.at("value").get<std::string>();
    binding.form = b.value("form", 0);
    binding.modifier = ParseModifier(b.value("modifier", "none"));
    binding.span.begin = b.at("begin").get<size_t>();
    binding.span.end = b.at("end").get<size_t>();
    bindings.push_back(std::move(binding));
  }
  const Json& lineage = j.at("lineage");
  c.lineage.template_id = lineage.value("template_id", "");
  for (const Json& s : lineage.at("steps")) {
    c.lineage.steps.push_back({ParseStep(s.at("kind").get<std::string>()),
                               s.at("category").get<std::string>(),
                               s.at("from").get<std::string>(),
                               s.at("to").get<std::string>()});
  }
  c.sentence = Sentence(pool.Get(j.at("skeleton").get<std::string>()),
                        std::move(bindings));
  if (auto problem = CheckCase(c)) throw ConfigError(*problem);
  return c;
}

Json HeaderJson(const CorpusHeader& h) {
  Json inputs = Json::array();
  for (const InputRef& in : h.inputs) {
    inputs.push_back({{"name", in.name}, {"sha256", in.sha256}});
  }
  Json j;
  j["record"] = "header";
  j["schema_version"] = h.schema_version;
  j["kind"] = h.kind;
  j["generator"] = h.generator;
  j["seed"] = h.seed;
  j["catalog_hash"] = h.catalog_hash;
  j["config_hash"] = h.config_hash;
  j["tool_version"] = h.tool_version;
  j["inputs"] = std::move(inputs);
  return j;
}

CorpusHeader HeaderFromJson(const Json& j, std::vector<std::string>* warnings) {
  if (j.value("record", "") != "header") {
    throw ConfigError("line 1: missing header record");
  }
  CorpusHeader h;
  h.schema_version = j.at("schema_version").get<int>();
  if (h.schema_version != kSchemaVersion) {
    throw ConfigError("line 1: unsupported schema_version " +
                      std::to_string(h.schema_version));
  }
  h.kind = j.at("kind").get<std::string>();
  h.generator = j.value("generator", "");
  h.seed = j.at("seed").get<uint64_t>();
  h.catalog_hash = j.value("catalog_hash", "");
  h.config_hash = j.value("config_hash", "");
  h.tool_version = j.value("tool_version", "");
  for (const Json& in : j.value("inputs", Json::array())) {
    h.inputs.push_back(
        {in.at("name").get<std::string>(), in.at("sha256").get<std::string>()});
  }
  if (h.tool_version != kToolVersion && warnings != nullptr) {
    warnings->push_back("corpus written by tool version " + h.tool_version +
                        ", this is " + kToolVersion);
  }
  return h;
}

// Calls `fn(json, line_number)` for every non-empty line after the header.
template <typename Fn>
CorpusHeader ParseLines(std::string_view text, std::string_view kind,
                        std::vector<std::string>* warnings, Fn fn) {
  std::vector<std::string> lines = SplitOn(text, '\n');
  if (!lines.empty() && lines.back().empty()) lines.pop_back();
  if (lines.empty()) throw ConfigError("line 1: empty corpus file");
  CorpusHeader header;
  for (size_t i = 0; i < lines.size(); ++i) {
    const int line_no = static_cast<int>(i + 1);
    try {
      Json j = Json::parse(lines[i]);
      if (i == 0) {
        header = HeaderFromJson(j, warnings);
        if (header.kind != kind) {
          throw ConfigError("expected a '" + std::string(kind) +
                            "' corpus, found '" + header.kind + "'");
        }
        continue;
      }
      fn(j);
    } catch (const Json::exception& e) {
      throw ConfigError("line " + std::to_string(line_no) + ": " + e.what());
    } catch (const ConfigError& e) {
      std::string msg = e.what();
      if (msg.starts_with("line ")) throw;
      throw ConfigError("line " + std::to_string(line_no) + ": " + msg);
    }
  }
  return header;
}

}  // namespace

std::string_view GeneratorName(GeneratorKind g) {
  switch (g) {
    case GeneratorKind::kGenFair:
      return "genfair";
    case GeneratorKind::kTemplate:
      return "template";
    case GeneratorKind::kAstraea:
      return "astraea";
  }
  return "genfair";
}

GeneratorKind ParseGenerator(std::string_view name) {
  if (name == "genfair") return GeneratorKind::kGenFair;
  if (name == "template") return GeneratorKind::kTemplate;
  if (name == "astraea") return GeneratorKind::kAstraea;
  throw ConfigError("unknown generator '" + std::string(name) + "'");
}

std::string_view StepName(StepKind k) {
  switch (k) {
    case StepKind::kEp:
      return "ep";
    case StepKind::kIntensify:
      return "mutate_intensify";
    case StepKind::kReduce:
      return "mutate_reduce";
    case StepKind::kNegate:
      return "mutate_negate";
    case StepKind::kSubstitute:
      return "mutate_substitute";
    case StepKind::kBva:
      return "bva";
  }
  return "ep";
}

StepKind ParseStep(std::string_view name) {
  for (StepKind k : {StepKind::kEp, StepKind::kIntensify, StepKind::kReduce,
                     StepKind::kNegate, StepKind::kSubstitute, StepKind::kBva}) {
    if (StepName(k) == name) return k;
  }
  throw ConfigError("unknown derivation step '" + std::string(name) + "'");
}

std::string CaseId(std::string_view text, GeneratorKind generator) {
  std::string key(GeneratorName(generator));
  key.push_back('\0');
  key.append(text);
  return ShortHash(key);
}

TestCase MakeCase(const Catalog& catalog, Sentence sentence,
                  GeneratorKind generator, Lineage lineage) {
  TestCase c;
  c.generator = generator;
  c.lineage = std::move(lineage);
  c.sentence = std::move(sentence);
  Refresh(catalog, c);
  return c;
}

void Refresh(const Catalog& catalog, TestCase& c) {
  c.text = Render(catalog, c.sentence);
  c.id = CaseId(c.text, c.generator);
}

std::optional<std::string> CheckCase(const TestCase& c) {
  if (c.text.empty()) return "case " + c.id + ": empty text";
  if (c.id != CaseId(c.text, c.generator)) {
    return "case " + c.id + ": id does not match content";
  }
  if (c.sentence.skeleton().SlotCount() != c.bindings().size()) {
    return "case " + c.id + ": slot/binding count mismatch";
  }
  size_t prev_end = 0;
  for (const Binding& b : c.bindings()) {
    if (b.span.begin > b.span.end || b.span.end > c.text.size()) {
      return "case " + c.id + ": span out of bounds for " + b.category;
    }
    if (b.span.begin < prev_end) {
      return "case " + c.id + ": overlapping spans at " + b.category;
    }
    prev_end = b.span.end;
  }
  return std::nullopt;
}

std::optional<std::string> CheckCase(const Catalog& catalog,
                                     const TestCase& c) {
  if (auto problem = CheckCase(c)) return problem;
  for (const Binding& b : c.bindings()) {
    const AttributeValue* v = nullptr;
    try {
      v = &catalog.value(b.category, b.value);
    } catch (const LookupError& e) {
      return "case " + c.id + ": " + e.what();
    }
    auto surface = SurfaceForm(*v, b.form, b.modifier);
    std::string_view sliced =
        std::string_view(c.text).substr(b.span.begin, b.span.end - b.span.begin);
    if (!surface || sliced != *surface) {
      return "case " + c.id + ": span '" + std::string(sliced) +
             "' is not a surface form of " + b.category + "/" + b.value;
    }
  }
  return std::nullopt;
}

std::string_view MrName(MrId mr) {
  static constexpr std::string_view kNames[] = {"MR1", "MR2", "MR3", "MR4",
                                                "MR5", "MR6", "MR7", "MR8"};
  return kNames[static_cast<int>(mr)];
}

MrId ParseMr(std::string_view name) {
  for (MrId mr : kAllMrs) {
    if (MrName(mr) == name) return mr;
  }
  throw ConfigError("unknown metamorphic relation '" + std::string(name) +
                    "'");
}

std::vector<MrId> ParseMrList(std::string_view list) {
  std::vector<MrId> out;
  for (const std::string& item : SplitOn(list, ',')) {
    std::string name = Trim(item);
    if (name.empty()) continue;
    MrId mr = ParseMr(name);
    bool dup = false;
    for (MrId m : out) dup = dup || m == mr;
    if (!dup) out.push_back(mr);
  }
  return out;
}

std::string PairId(const TestCase& source, MrId mr, const TestCase& followup) {
  return ShortHash(source.id + "|" + std::string(MrName(mr)) + "|" +
                   followup.id);
}

CorpusHeader MakeHeader(std::string kind, std::string generator, uint64_t seed,
                        const Catalog& catalog, std::string_view config_text) {
  CorpusHeader h;
  h.kind = std::move(kind);
  h.generator = std::move(generator);
  h.seed = seed;
  h.catalog_hash = catalog.Hash();
  h.config_hash = ShortHash(config_text);
  h.tool_version = kToolVersion;
  return h;
}

Corpus Dedup(const Corpus& corpus) {
  Corpus out;
  out.header = corpus.header;
  std::unordered_set<std::string> seen;
  for (const TestCase& c : corpus.cases) {
    if (seen.insert(NormalizeText(c.text)).second) out.cases.push_back(c);
  }
  return out;
}

Corpus TakeFirst(const Corpus& corpus, size_t n) {
  Corpus out;
  out.header = corpus.header;
  size_t k = std::min(n, corpus.cases.size());
  out.cases.assign(corpus.cases.begin(),
                   corpus.cases.begin() + static_cast<ptrdiff_t>(k));
  return out;
}

std::string SerializeCorpus(const Corpus& corpus) {
  SkeletonTable table;
  std::string body;
  for (const TestCase& c : corpus.cases) {
    Json j;
    j["record"] = "case";
    Json fields = CaseJson(c, table);
    for (auto& [k, v] : fields.items()) j[k] = v;
    body += j.dump();
    body.push_back('\n');
  }
  return HeaderJson(corpus.header).dump() + "\n" + table.records() + body;
}

std::string SerializePairCorpus(const PairCorpus& corpus) {
  SkeletonTable table;
  std::string body;
  for (const TestPair& p : corpus.pairs) {
    Json j;
    j["record"] = "pair";
    j["pair_id"] = p.pair_id;
    j["mr"] = MrName(p.mr);
    j["relation"] = {{"tone_equal", p.relation.requires_tone_equal},
                     {"sentiment_equal", p.relation.requires_sentiment_equal}};
    j["source"] = CaseJson(p.source, table);
    j["followup"] = CaseJson(p.followup, table);
    body += j.dump();
    body.push_back('\n');
  }
  return HeaderJson(corpus.header).dump() + "\n" + table.records() + body;
}

void WriteCorpus(const Corpus& corpus, const std::filesystem::path& path) {
  WriteFileAtomic(path, SerializeCorpus(corpus));
}

void WritePairCorpus(const PairCorpus& corpus,
                     const std::filesystem::path& path) {
  WriteFileAtomic(path, SerializePairCorpus(corpus));
}

Corpus ParseCorpus(std::string_view text, std::vector<std::string>* warnings) {
  Corpus corpus;
  SkeletonPool pool;
  std::unordered_set<std::string> ids;
  corpus.header = ParseLines(text, "cases", warnings, [&](const Json& j) {
    if (j.value("record", "") == "skeleton") return pool.Add(j);
    if (j.value("record", "") != "case") {
      throw ConfigError("expected a case record");
    }
    TestCase c = CaseFromJson(j, pool);
    if (!ids.insert(c.id).second) {
      throw ConfigError("duplicate case id " + c.id);
    }
    corpus.cases.push_back(std::move(c));
  });
  return corpus;
}

PairCorpus ParsePairCorpus(std::string_view text,
                           std::vector<std::string>* warnings) {
  PairCorpus corpus;
  SkeletonPool pool;
  std::unordered_set<std::string> ids;
  corpus.header = ParseLines(text, "pairs", warnings, [&](const Json& j) {
    if (j.value("record", "") == "skeleton") return pool.Add(j);
    if (j.value("record", "") != "pair") {
      throw ConfigError("expected a pair record");
    }
    TestPair p;
    p.pair_id = j.at("pair_id").get<std::string>();
    p.mr = ParseMr(j.at("mr").get<std::string>());
    const Json& rel = j.at("relation");
    p.relation.requires_tone_equal = rel.at("tone_equal").get<bool>();
    p.relation.requires_sentiment_equal = rel.at("sentiment_equal").get<bool>();
    p.source = CaseFromJson(j.at("source"), pool);
    p.followup = CaseFromJson(j.at("followup"), pool);
    if (!ids.insert(p.pair_id).second) {
      throw ConfigError("duplicate pair id " + p.pair_id);
    }
    corpus.pairs.push_back(std::move(p));
  });
  return corpus;
}

Corpus ReadCorpus(const std::filesystem::path& path,
                  std::vector<std::string>* warnings) {
  return ParseCorpus(ReadFile(path), warnings);
}

PairCorpus ReadPairCorpus(const std::filesystem::path& path,
                          std::vector<std::string>* warnings) {
  return ParsePairCorpus(ReadFile(path), warnings);
}

}  // namespace fairmt
