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

#include "fairmt/baselines.h"

#include <algorithm>
#include <set>
#include <unordered_set>

#include "fairmt/errors.h"
#include "fairmt/rng.h"
#include "fairmt/text_util.h"
#include "json.hpp"

namespace fairmt {
namespace {

using Json = nlohmann::json;

constexpr int kMaxAttempts = 64;

std::vector<double> WeightsFor(const AstraeaSpec& spec, const Catalog& catalog,
                               const std::string& category) {
  const AttributeCategory& cat = catalog.category(category);
  auto it = spec.probs.find(category);
  std::vector<double> w(cat.values.size(), 1.0);
  if (it == spec.probs.end()) return w;
  for (size_t i = 0; i < cat.values.size(); ++i) {
    auto v = it->second.find(cat.values[i].id);
    w[i] = v == it->second.end() ? 0.0 : v->second;
  }
  return w;
}

std::string Slot(const std::string& category, int form) {
  return "[" + category + (form == 0 ? "" : ":" + std::to_string(form)) + "]";
}

}  // namespace

Corpus GenerateTemplateBaseline(const std::vector<Template>& templates,
                                const Catalog& catalog, uint64_t n,
                                uint64_t seed,
                                std::vector<std::string>* warnings) {
  std::vector<const Template*> order;
  for (const Template& t : templates) {
    ValidateTemplate(t, catalog);
    order.push_back(&t);
  }
  std::stable_sort(order.begin(), order.end(),
                   [](const Template* a, const Template* b) {
                     return a->id < b->id;
                   });
  Corpus corpus;
  corpus.header = MakeHeader("cases", "template", seed, catalog,
                             "n=" + std::to_string(n));
  std::unordered_set<std::string> ids;
  uint64_t available = 0;
  for (const Template* t : order) {
    uint64_t product = ProductSize(*t, catalog);
    available += product;
    for (uint64_t i = 0; i < product && corpus.cases.size() < n; ++i) {
      Sentence s = Instantiate(*t, catalog, DecodeIndex(*t, catalog, i));
      TestCase c = MakeCase(catalog, std::move(s), GeneratorKind::kTemplate,
                            {t->id, {}});
      if (!ids.insert(c.id).second) {
        if (warnings != nullptr) {
          warnings->push_back("template " + t->id + ": duplicate sentence '" +
                              c.text + "' dropped");
        }
        continue;
      }
      corpus.cases.push_back(std::move(c));
    }
  }
  if (corpus.cases.size() < n && warnings != nullptr) {
    warnings->push_back("requested " + std::to_string(n) +
                        " template cases but only " +
                        std::to_string(corpus.cases.size()) + " of " +
                        std::to_string(available) + " combinations exist");
  }
  return corpus;
}

AstraeaSpec ParseAstraeaSpec(std::string_view json_text,
                             const Catalog& catalog) {
  Json j;
  try {
    j = Json::parse(json_text);
  } catch (const Json::parse_error& e) {
    throw ConfigError("grammar file, line " +
                      std::to_string(LineOfOffset(json_text, e.byte)) + ": " +
                      e.what());
  }
  AstraeaSpec spec;
  AstraeaGrammar& g = spec.grammar;
  try {
    g.person_categories = j.at("person_categories").get<std::vector<std::string>>();
    g.person_count = j.value("person_count", size_t{3});
    g.person_forms = j.value("person_forms", std::map<std::string, int>{});
    g.occupation_category = j.value("occupation_category", g.occupation_category);
    g.economic_category = j.value("economic_category", g.economic_category);
    g.verbs = j.at("verbs").get<std::vector<std::string>>();
    g.objects = j.at("objects").get<std::vector<std::string>>();
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("grammar file: ") + e.what());
  }
  if (g.person_count == 0 || g.person_categories.size() < g.person_count) {
    throw ConfigError("grammar needs at least " +
                      std::to_string(g.person_count) + " person categories");
  }
  if (g.verbs.empty() || g.objects.empty()) {
    throw ConfigError("grammar needs verbs and objects");
  }
  std::vector<std::string> used = g.person_categories;
  used.push_back(g.occupation_category);
  used.push_back(g.economic_category);
  for (const std::string& cat : used) {
    if (catalog.FindCategory(cat) == nullptr) {
      throw ConfigError("grammar names unknown category " + cat);
    }
  }

  const Json probs = j.value("probabilities", Json::object());
  for (const std::string& cat : used) {
    const AttributeCategory& ac = catalog.category(cat);
    std::map<std::string, double> table;
    if (!probs.contains(cat)) {
      for (const AttributeValue& v : ac.values) {
        table[v.id] = 1.0 / static_cast<double>(ac.values.size());
      }
      spec.probs[cat] = std::move(table);
      continue;
    }
    double sum = 0;
    for (const AttributeValue& v : ac.values) table[v.id] = 0.0;
    for (const auto& [value, weight] : probs.at(cat).items()) {
      auto idx = catalog.ValueIndex(cat, value);
      if (!idx) {
        throw ConfigError("probability for unknown value " + cat + "/" + value);
      }
      double w = weight.get<double>();
      if (!(w >= 0)) {
        throw ConfigError("negative probability for " + cat + "/" + value);
      }
      table[ac.values[*idx].id] += w;
      sum += w;
    }
    if (!(sum > 0)) {
      throw ConfigError("category " + cat + " has zero total probability");
    }
    for (auto& [value, w] : table) w /= sum;
    spec.probs[cat] = std::move(table);
  }
  return spec;
}

AstraeaSpec LoadAstraeaSpec(const std::filesystem::path& path,
                            const Catalog& catalog) {
  return ParseAstraeaSpec(ReadFile(path), catalog);
}

std::filesystem::path DefaultAstraeaPath() {
  return DataDir() / "grammars" / "astraea_default.json";
}

Corpus GenerateAstraea(const AstraeaSpec& spec, const Catalog& catalog,
                       uint64_t n, uint64_t seed) {
  const AstraeaGrammar& g = spec.grammar;
  Corpus corpus;
  corpus.header = MakeHeader("cases", "astraea", seed, catalog,
                             "n=" + std::to_string(n));

  std::map<std::string, std::vector<double>> weights;
  for (const auto& [cat, table] : spec.probs) {
    weights[cat] = WeightsFor(spec, catalog, cat);
  }
  std::map<std::string, Template> frames;
  std::unordered_set<std::string> seen;

  for (uint64_t i = 0; i < n; ++i) {
    Rng frame_rng(DeriveSeed(seed, "astraea|" + std::to_string(i)));
    const std::string& verb = g.verbs[frame_rng.Uniform(g.verbs.size())];
    const std::string& object = g.objects[frame_rng.Uniform(g.objects.size())];
    std::vector<size_t> rest;
    rest.push_back(frame_rng.Weighted(weights.at(g.occupation_category)));
    rest.push_back(frame_rng.Weighted(weights.at(g.economic_category)));

    bool placed = false;
    for (int attempt = 0; attempt < kMaxAttempts && !placed; ++attempt) {
      // PERSON: categories in selection order, one weighted value each.
      Rng rng(DeriveSeed(seed, "astraea|" + std::to_string(i) + "|person|" +
                                   std::to_string(attempt)));
      std::vector<std::string> cats = g.person_categories;
      rng.Shuffle(cats);
      cats.resize(g.person_count);
      std::set<std::string> distinct(cats.begin(), cats.end());
      if (distinct.size() < 3) continue;

      std::string text = "The";
      std::vector<size_t> indices;
      for (const std::string& cat : cats) {
        auto it = g.person_forms.find(cat);
        text += " " + Slot(cat, it == g.person_forms.end() ? 0 : it->second);
        indices.push_back(rng.Weighted(weights.at(cat)));
      }
      text += ", who is a " + Slot(g.occupation_category, 0) + " from a " +
              Slot(g.economic_category, 0) + " background, " + verb + " " +
              object + ".";
      indices.insert(indices.end(), rest.begin(), rest.end());

      auto frame = frames.find(text);
      if (frame == frames.end()) {
        frame = frames.emplace(text, ParseTemplate("astraea", text)).first;
      }
      Sentence s = Instantiate(frame->second, catalog, indices);
      TestCase c = MakeCase(catalog, std::move(s), GeneratorKind::kAstraea, {});
      if (!AstraeaValidate(c)) continue;
      if (!seen.insert(c.id).second) continue;
      corpus.cases.push_back(std::move(c));
      placed = true;
    }
    if (!placed) {
      throw ValidationError("could not draw a fresh valid sentence for index " +
                            std::to_string(i));
    }
  }
  return corpus;
}

bool AstraeaValidate(const TestCase& c) {
  std::set<std::string> cats;
  for (const Binding& b : c.bindings()) cats.insert(b.category);
  return cats.size() >= 3;
}

}  // namespace fairmt
