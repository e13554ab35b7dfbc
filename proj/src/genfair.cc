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

#include "fairmt/genfair.h"

#include <algorithm>
#include <functional>
#include <set>
#include <unordered_set>

#include "fairmt/errors.h"
#include "fairmt/text_util.h"
#include "json.hpp"

namespace fairmt {
namespace {

using Json = nlohmann::ordered_json;

constexpr MutationOp kAllOps[] = {MutationOp::kIntensify, MutationOp::kReduce,
                                  MutationOp::kNegate, MutationOp::kSubstitute};

size_t BindingIndexOrThrow(const TestCase& c, std::string_view category) {
  int i = c.sentence.FindBinding(category);
  if (i < 0) {
    throw LookupError("case " + c.id + " has no binding for " +
                      std::string(category));
  }
  return static_cast<size_t>(i);
}

TestCase Derive(const TestCase& parent, const Catalog& catalog, size_t index,
                StepKind kind, const std::string& to, Modifier modifier) {
  TestCase out = parent;
  Binding& b = out.sentence.mutable_bindings()[index];
  DerivationStep step{kind, b.category, b.value, to};
  b.value = to;
  b.modifier = modifier;
  out.lineage.steps.push_back(std::move(step));
  Refresh(catalog, out);
  return out;
}

// Index of the value one scale step from `current` toward `target`, or
// nullopt when already there.
std::optional<size_t> StepToward(size_t current, size_t target) {
  if (current == target) return std::nullopt;
  return current < target ? current + 1 : current - 1;
}

std::optional<std::pair<std::string, Modifier>> IntensifyTarget(
    const Catalog& catalog, const Binding& b, Direction direction) {
  if (b.modifier != Modifier::kNone) return std::nullopt;
  const AttributeCategory& cat = catalog.category(b.category);
  if (cat.kind == CategoryKind::kOrdered) {
    const OrderedScale* scale = catalog.FindScale(cat.id);
    if (scale == nullptr) return std::nullopt;
    size_t current = *catalog.ValueIndex(cat.id, b.value);
    size_t target = *catalog.ValueIndex(
        cat.id, direction == Direction::kIntensify ? scale->max_value
                                                   : scale->min_value);
    auto next = StepToward(current, target);
    if (!next) return std::nullopt;
    return std::make_pair(cat.values[*next].id, Modifier::kNone);
  }
  Modifier m = direction == Direction::kIntensify ? Modifier::kIntensified
                                                  : Modifier::kReduced;
  if (!SurfaceForm(catalog.value(cat.id, b.value), b.form, m)) {
    return std::nullopt;
  }
  return std::make_pair(b.value, m);
}

bool MutationEligible(const Catalog& catalog, const Binding& b,
                      MutationOp op) {
  switch (op) {
    case MutationOp::kIntensify:
      return IntensifyTarget(catalog, b, Direction::kIntensify).has_value();
    case MutationOp::kReduce:
      return IntensifyTarget(catalog, b, Direction::kReduce).has_value();
    case MutationOp::kNegate:
      return b.modifier != Modifier::kNegated;
    case MutationOp::kSubstitute:
      return catalog.category(b.category).values.size() >= 2;
  }
  return false;
}

uint64_t SubstituteSeed(uint64_t seed, const TestCase& c,
                        std::string_view category) {
  return DeriveSeed(seed, c.id + "|substitute|" + std::string(category));
}

std::vector<std::string> BvaCategoriesFor(const TestCase& c,
                                          const Catalog& catalog,
                                          const GenConfig& config) {
  std::vector<std::string> out;
  if (config.bva_categories.empty()) {
    for (const Binding& b : c.bindings()) {
      if (catalog.FindScale(b.category) != nullptr) out.push_back(b.category);
    }
  } else {
    for (const std::string& cat : config.bva_categories) {
      if (c.sentence.FindBinding(cat) >= 0) out.push_back(cat);
    }
  }
  return out;
}

// One candidate derivation of a parent: which binding and which variant.
struct Candidate {
  uint32_t binding;
  uint32_t arg;
};

class Pipeline {
 public:
  Pipeline(const std::vector<Template>& templates, const Catalog& catalog,
           const GenConfig& config)
      : catalog_(catalog), config_(config) {
    for (const Template& t : templates) by_id_[t.id] = &t;
  }

  GenResult Run(const std::vector<Template>& templates) {
    GenResult result;
    result_ = &result;
    Corpus bases = InstantiateTemplates(templates, catalog_, config_.seed,
                                        config_.base_cases);
    std::vector<TestCase> level;
    for (TestCase& c : bases.cases) {
      if (config_.max_cases && Full()) break;
      if (Admit(c)) {
        ++result.stats.base;
        level.push_back(std::move(c));
      }
    }

    // Equivalence partitioning.
    std::map<std::string, uint64_t> unbound;
    std::vector<std::vector<Candidate>> cands(level.size());
    for (size_t p = 0; p < level.size(); ++p) {
      const TestCase& c = level[p];
      std::vector<std::string> cats = config_.ep_categories;
      if (cats.empty()) {
        for (const Binding& b : c.bindings()) cats.push_back(b.category);
      }
      for (const std::string& cat : cats) {
        int i = c.sentence.FindBinding(cat);
        if (i < 0) {
          ++unbound[cat];
          continue;
        }
        const AttributeCategory& ac = catalog_.category(cat);
        for (uint32_t v = 0; v < ac.values.size(); ++v) {
          if (ac.values[v].id == c.bindings()[i].value) continue;
          cands[p].push_back({static_cast<uint32_t>(i), v});
        }
      }
    }
    for (const auto& [cat, n] : unbound) {
      Log("ep: category " + cat + " unbound in " + std::to_string(n) +
          " case(s); skipped");
    }
    level = RunStage(level, cands, StageQuota(3), &result.stats.ep,
                     [&](const TestCase& parent, Candidate k) {
                       const Binding& b = parent.bindings()[k.binding];
                       const AttributeCategory& ac =
                           catalog_.category(b.category);
                       return std::optional<TestCase>(
                           Derive(parent, catalog_, k.binding, StepKind::kEp,
                                  ac.values[k.arg].id, Modifier::kNone));
                     });

    // Mutation operators, each applied to every eligible binding.
    cands.assign(level.size(), {});
    for (size_t p = 0; p < level.size(); ++p) {
      for (uint32_t op = 0; op < config_.mutation_ops.size(); ++op) {
        const auto& bindings = level[p].bindings();
        for (uint32_t i = 0; i < bindings.size(); ++i) {
          if (MutationEligible(catalog_, bindings[i],
                               config_.mutation_ops[op])) {
            cands[p].push_back({i, op});
          }
        }
      }
    }
    level = RunStage(
        level, cands, StageQuota(2), &result.stats.mutation,
        [&](const TestCase& parent, Candidate k) -> std::optional<TestCase> {
          const std::string& cat = parent.bindings()[k.binding].category;
          switch (config_.mutation_ops[k.arg]) {
            case MutationOp::kIntensify:
              return MutateIntensify(parent, catalog_, cat,
                                     Direction::kIntensify);
            case MutationOp::kReduce:
              return MutateIntensify(parent, catalog_, cat, Direction::kReduce);
            case MutationOp::kNegate:
              return MutateNegate(parent, catalog_, cat);
            case MutationOp::kSubstitute: {
              Rng rng(SubstituteSeed(config_.seed, parent, cat));
              return MutateSubstitute(parent, catalog_, cat, rng);
            }
          }
          return std::nullopt;
        });

    // Boundary values.
    cands.assign(level.size(), {});
    for (size_t p = 0; p < level.size(); ++p) {
      const TestCase& c = level[p];
      for (const std::string& cat : BvaCategoriesFor(c, catalog_, config_)) {
        auto [lo, hi] = BoundaryValues(catalog_, cat);
        uint32_t i = static_cast<uint32_t>(c.sentence.FindBinding(cat));
        for (uint32_t e = 0; e < 2; ++e) {
          const std::string& v = e == 0 ? lo.id : hi.id;
          if (v != c.bindings()[i].value) cands[p].push_back({i, e});
        }
      }
    }
    RunStage(level, cands, StageQuota(1), &result.stats.bva,
             [&](const TestCase& parent, Candidate k) {
               const Binding& b = parent.bindings()[k.binding];
               auto [lo, hi] = BoundaryValues(catalog_, b.category);
               return std::optional<TestCase>(
                   Derive(parent, catalog_, k.binding, StepKind::kBva,
                          k.arg == 0 ? lo.id : hi.id, Modifier::kNone));
             });
    result.corpus.header =
        MakeHeader("cases", "genfair", config_.seed, catalog_,
                   SerializeGenConfig(config_));
    result_ = nullptr;
    return result;
  }

 private:
  using MakeFn =
      std::function<std::optional<TestCase>(const TestCase&, Candidate)>;

  bool Full() const {
    return config_.max_cases && result_->corpus.cases.size() >= *config_.max_cases;
  }

  std::optional<uint64_t> StageQuota(int stages_left) const {
    if (!config_.max_cases) return std::nullopt;
    uint64_t used = result_->corpus.cases.size();
    uint64_t left = *config_.max_cases > used ? *config_.max_cases - used : 0;
    return left / static_cast<uint64_t>(stages_left);
  }

  void Log(std::string line) { result_->log.push_back(std::move(line)); }

  // Adds `c` to the corpus unless it fails the replay check or duplicates
  // an earlier case.
  bool Admit(const TestCase& c) {
    if (auto problem = CheckCase(catalog_, c)) {
      ++result_->stats.skipped;
      Log("skip: " + *problem);
      return false;
    }
    if (auto problem = ReplayLineage(c, by_id_, catalog_)) {
      ++result_->stats.skipped;
      Log("skip: replay mismatch: " + *problem);
      return false;
    }
    if (!seen_.insert(NormalizeText(c.text)).second) {
      ++result_->stats.duplicates;
      return false;
    }
    result_->corpus.cases.push_back(c);
    return true;
  }

  std::vector<TestCase> RunStage(const std::vector<TestCase>& parents,
                                 const std::vector<std::vector<Candidate>>& cands,
                                 std::optional<uint64_t> quota,
                                 uint64_t* counter, const MakeFn& make) {
    std::vector<TestCase> outputs;
    std::unordered_set<std::string> stage_seen;
    size_t widest = 0;
    for (const auto& list : cands) widest = std::max(widest, list.size());
    uint64_t added = 0;
    for (size_t j = 0; j < widest; ++j) {
      for (size_t p = 0; p < parents.size(); ++p) {
        if (quota && added >= *quota) return outputs;
        if (j >= cands[p].size()) continue;
        std::optional<TestCase> child;
        try {
          child = make(parents[p], cands[p][j]);
        } catch (const Error& e) {
          ++result_->stats.skipped;
          Log("skip: derivation from " + parents[p].id + " failed: " +
              e.what());
          continue;
        }
        if (!child) continue;
        bool fresh_in_stage =
            stage_seen.insert(NormalizeText(child->text)).second;
        if (Admit(*child)) {
          ++added;
          ++*counter;
        }
        if (fresh_in_stage) outputs.push_back(std::move(*child));
      }
    }
    return outputs;
  }

  const Catalog& catalog_;
  const GenConfig& config_;
  std::map<std::string, const Template*> by_id_;
  std::unordered_set<std::string> seen_;
  GenResult* result_ = nullptr;
};

}  // namespace

std::string_view MutationOpName(MutationOp op) {
  switch (op) {
    case MutationOp::kIntensify:
      return "intensify";
    case MutationOp::kReduce:
      return "reduce";
    case MutationOp::kNegate:
      return "negate";
    case MutationOp::kSubstitute:
      return "substitute";
  }
  return "substitute";
}

MutationOp ParseMutationOp(std::string_view name) {
  for (MutationOp op : kAllOps) {
    if (MutationOpName(op) == name) return op;
  }
  throw ConfigError("unknown mutation operator '" + std::string(name) + "'");
}

GenConfig ParseGenConfig(std::string_view json_text) {
  GenConfig config;
  Json j;
  try {
    j = Json::parse(json_text);
  } catch (const Json::parse_error& e) {
    throw ConfigError("generator config, line " +
                      std::to_string(LineOfOffset(json_text, e.byte)) + ": " +
                      e.what());
  }
  try {
    config.seed = j.value("seed", uint64_t{0});
    config.base_cases = j.value("base_cases", uint64_t{3000});
    config.ep_categories =
        j.value("ep_categories", std::vector<std::string>{});
    if (j.contains("mutation_ops")) {
      config.mutation_ops.clear();
      for (const auto& op : j.at("mutation_ops")) {
        config.mutation_ops.push_back(ParseMutationOp(op.get<std::string>()));
      }
    }
    config.bva_categories =
        j.value("bva_categories", std::vector<std::string>{});
    if (j.contains("max_cases") && !j.at("max_cases").is_null()) {
      config.max_cases = j.at("max_cases").get<uint64_t>();
    }
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("generator config: ") + e.what());
  }
  return config;
}

std::string SerializeGenConfig(const GenConfig& config) {
  Json j;
  j["seed"] = config.seed;
  j["base_cases"] = config.base_cases;
  j["ep_categories"] = config.ep_categories;
  Json ops = Json::array();
  for (MutationOp op : config.mutation_ops) ops.push_back(MutationOpName(op));
  j["mutation_ops"] = std::move(ops);
  j["bva_categories"] = config.bva_categories;
  j["max_cases"] = config.max_cases ? Json(*config.max_cases) : Json(nullptr);
  return j.dump(2) + "\n";
}

GenConfig LoadGenConfig(const std::filesystem::path& path) {
  return ParseGenConfig(ReadFile(path));
}

std::filesystem::path DefaultGenConfigPath() {
  return DataDir() / "configs" / "genfair_default.json";
}

std::vector<uint64_t> BaseQuotas(const std::vector<uint64_t>& products,
                                 uint64_t total) {
  std::vector<uint64_t> quota(products.size(), 0);
  std::vector<size_t> active;
  for (size_t i = 0; i < products.size(); ++i) {
    if (products[i] > 0) active.push_back(i);
  }
  uint64_t remaining = total;
  bool changed = true;
  while (changed && !active.empty()) {
    changed = false;
    uint64_t share = remaining / active.size();
    std::vector<size_t> still;
    for (size_t i : active) {
      if (products[i] <= share) {
        quota[i] = products[i];
        remaining -= products[i];
        changed = true;
      } else {
        still.push_back(i);
      }
    }
    active = std::move(still);
  }
  if (!active.empty()) {
    uint64_t share = remaining / active.size();
    uint64_t extra = remaining % active.size();
    for (size_t k = 0; k < active.size(); ++k) {
      quota[active[k]] = share + (k < extra ? 1 : 0);
    }
  }
  return quota;
}

Corpus InstantiateTemplates(const std::vector<Template>& templates,
                            const Catalog& catalog, uint64_t seed,
                            uint64_t base_cases) {
  for (const Template& t : templates) ValidateTemplate(t, catalog);
  std::vector<uint64_t> products;
  for (const Template& t : templates) {
    products.push_back(ProductSize(t, catalog));
  }
  std::vector<uint64_t> quotas =
      base_cases == 0 ? products : BaseQuotas(products, base_cases);

  Corpus corpus;
  corpus.header = MakeHeader("cases", "genfair", seed, catalog,
                             "base_cases=" + std::to_string(base_cases));
  for (size_t ti = 0; ti < templates.size(); ++ti) {
    const Template& t = templates[ti];
    std::vector<uint64_t> indices;
    if (quotas[ti] >= products[ti]) {
      indices.resize(products[ti]);
      for (uint64_t i = 0; i < products[ti]; ++i) indices[i] = i;
    } else {
      Rng rng(DeriveSeed(seed, "instantiate|" + t.id));
      indices = rng.SampleIndices(products[ti], quotas[ti]);
    }
    for (uint64_t index : indices) {
      Sentence s = Instantiate(t, catalog, DecodeIndex(t, catalog, index));
      corpus.cases.push_back(MakeCase(catalog, std::move(s),
                                      GeneratorKind::kGenFair, {t.id, {}}));
    }
  }
  return corpus;
}

std::vector<TestCase> ExpandEquivalence(const TestCase& c,
                                        const Catalog& catalog,
                                        const std::vector<std::string>& categories,
                                        std::vector<std::string>* warnings) {
  std::vector<TestCase> out;
  for (const std::string& cat : categories) {
    int i = c.sentence.FindBinding(cat);
    if (i < 0) {
      if (warnings != nullptr) {
        warnings->push_back("case " + c.id + " has no binding for " + cat +
                            "; equivalence expansion skipped");
      }
      continue;
    }
    const std::string current = c.bindings()[i].value;
    for (const AttributeValue& v : PartitionsOf(catalog, cat)) {
      if (v.id == current) continue;
      out.push_back(Derive(c, catalog, static_cast<size_t>(i), StepKind::kEp,
                           v.id, Modifier::kNone));
    }
  }
  return out;
}

std::optional<TestCase> MutateIntensify(const TestCase& c,
                                        const Catalog& catalog,
                                        std::string_view category,
                                        Direction direction) {
  size_t i = BindingIndexOrThrow(c, category);
  auto target = IntensifyTarget(catalog, c.bindings()[i], direction);
  if (!target) return std::nullopt;
  return Derive(c, catalog, i,
                direction == Direction::kIntensify ? StepKind::kIntensify
                                                   : StepKind::kReduce,
                target->first, target->second);
}

std::optional<TestCase> MutateNegate(const TestCase& c, const Catalog& catalog,
                                     std::string_view category) {
  size_t i = BindingIndexOrThrow(c, category);
  const Binding& b = c.bindings()[i];
  if (b.modifier == Modifier::kNegated) return std::nullopt;
  return Derive(c, catalog, i, StepKind::kNegate, b.value, Modifier::kNegated);
}

TestCase MutateSubstitute(const TestCase& c, const Catalog& catalog,
                          std::string_view category, Rng& rng) {
  size_t i = BindingIndexOrThrow(c, category);
  const AttributeCategory& cat = catalog.category(category);
  size_t current = *catalog.ValueIndex(cat.id, c.bindings()[i].value);
  size_t pick = rng.Uniform(cat.values.size() - 1);
  if (pick >= current) ++pick;
  return Derive(c, catalog, i, StepKind::kSubstitute, cat.values[pick].id,
                Modifier::kNone);
}

std::vector<TestCase> ApplyBva(const TestCase& c, const Catalog& catalog,
                               std::string_view category) {
  auto [lo, hi] = BoundaryValues(catalog, category);
  size_t i = BindingIndexOrThrow(c, category);
  std::vector<TestCase> out;
  for (const AttributeValue* v : {&lo, &hi}) {
    if (v->id == c.bindings()[i].value) continue;
    out.push_back(Derive(c, catalog, i, StepKind::kBva, v->id, Modifier::kNone));
  }
  return out;
}

std::optional<std::string> ReplayLineage(
    const TestCase& c, const std::map<std::string, const Template*>& templates,
    const Catalog& catalog) {
  if (c.lineage.template_id.empty()) return std::nullopt;
  auto it = templates.find(c.lineage.template_id);
  if (it == templates.end()) {
    return "case " + c.id + ": unknown template " + c.lineage.template_id;
  }
  const Template& t = *it->second;

  // The base value of a category is the `from` of its first step, or the
  // final value when no step touched it.
  std::vector<size_t> indices;
  for (const Placeholder& p : t.placeholders) {
    int bi = c.sentence.FindBinding(p.category);
    if (bi < 0) return "case " + c.id + ": binding for " + p.category + " lost";
    std::string base = c.bindings()[bi].value;
    for (const DerivationStep& s : c.lineage.steps) {
      if (s.category == p.category) {
        base = s.from;
        break;
      }
    }
    auto idx = catalog.ValueIndex(p.category, base);
    if (!idx) return "case " + c.id + ": unknown value " + base;
    indices.push_back(*idx);
  }

  Sentence s = Instantiate(t, catalog, indices);
  for (const DerivationStep& step : c.lineage.steps) {
    int bi = s.FindBinding(step.category);
    if (bi < 0) return "case " + c.id + ": step on unbound " + step.category;
    Binding& b = s.mutable_bindings()[bi];
    if (b.value != step.from) {
      return "case " + c.id + ": step expects " + step.from + " but found " +
             b.value;
    }
    bool ordered = catalog.category(step.category).kind == CategoryKind::kOrdered;
    switch (step.kind) {
      case StepKind::kEp:
      case StepKind::kSubstitute:
      case StepKind::kBva:
        b.value = step.to;
        b.modifier = Modifier::kNone;
        break;
      case StepKind::kIntensify:
      case StepKind::kReduce:
        if (ordered) {
          b.value = step.to;
        } else {
          b.modifier = step.kind == StepKind::kIntensify ? Modifier::kIntensified
                                                         : Modifier::kReduced;
        }
        break;
      case StepKind::kNegate:
        b.modifier = Modifier::kNegated;
        break;
    }
  }
  std::string text = Render(catalog, s);
  if (text != c.text) {
    return "case " + c.id + ": replay gives '" + text + "'";
  }
  if (s.bindings() != c.bindings()) {
    return "case " + c.id + ": replayed bindings differ";
  }
  return std::nullopt;
}

GenResult GenerateGenFair(const std::vector<Template>& templates,
                          const Catalog& catalog, const GenConfig& config) {
  for (const std::string& cat : config.ep_categories) catalog.category(cat);
  for (const std::string& cat : config.bva_categories) {
    BoundaryValues(catalog, cat);
  }
  return Pipeline(templates, catalog, config).Run(templates);
}

}  // namespace fairmt
