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

#include "fairmt/catalog.h"

#include <set>

#include "fairmt/errors.h"
#include "fairmt/text_util.h"
#include "json.hpp"

namespace fairmt {
namespace {

using nlohmann::json;

std::vector<std::string> StringList(const json& j, std::string_view field,
                                    const std::string& where) {
  std::vector<std::string> out;
  if (!j.contains(field)) return out;
  const json& list = j.at(field);
  if (list.is_string()) {
    out.push_back(list.get<std::string>());
    return out;
  }
  if (!list.is_array()) {
    throw ValidationError(where + ": field '" + std::string(field) +
                          "' must be a list of strings");
  }
  for (const json& item : list) {
    out.push_back(item.is_null() ? std::string() : item.get<std::string>());
  }
  return out;
}

json ListJson(const std::vector<std::string>& items) {
  json out = json::array();
  for (const auto& s : items) {
    if (s.empty()) {
      out.push_back(nullptr);
    } else {
      out.push_back(s);
    }
  }
  return out;
}

const std::string& FormAt(const std::vector<std::string>& forms, int form) {
  static const std::string kEmpty;
  if (form >= 0 && static_cast<size_t>(form) < forms.size()) return forms[form];
  return kEmpty;
}

}  // namespace

std::string_view ModifierName(Modifier m) {
  switch (m) {
    case Modifier::kNone:
      return "none";
    case Modifier::kIntensified:
      return "intensified";
    case Modifier::kReduced:
      return "reduced";
    case Modifier::kNegated:
      return "negated";
  }
  return "none";
}

Modifier ParseModifier(std::string_view name) {
  if (name == "none") return Modifier::kNone;
  if (name == "intensified") return Modifier::kIntensified;
  if (name == "reduced") return Modifier::kReduced;
  if (name == "negated") return Modifier::kNegated;
  throw ConfigError("unknown modifier '" + std::string(name) + "'");
}

Catalog::Catalog(std::vector<AttributeCategory> categories,
                 std::vector<OrderedScale> scales)
    : categories_(std::move(categories)) {
  for (size_t i = 0; i < categories_.size(); ++i) {
    if (!index_.emplace(categories_[i].id, i).second) {
      throw ValidationError("category " + categories_[i].id +
                            ": declared twice");
    }
  }
  for (auto& scale : scales) {
    std::string id = scale.category_id;
    if (!scales_.emplace(id, std::move(scale)).second) {
      throw ValidationError("category " + id + ": more than one scale");
    }
  }
  Validate();
}

void Catalog::Validate() const {
  for (const AttributeCategory& cat : categories_) {
    const std::string where = "category " + cat.id;
    if (cat.id.empty()) throw ValidationError("category with empty id");
    if (cat.values.size() < 2) {
      throw ValidationError(where + ": needs at least 2 values, has " +
                            std::to_string(cat.values.size()));
    }
    std::set<std::string> seen;
    for (const AttributeValue& v : cat.values) {
      if (v.id.empty()) throw ValidationError(where + ": value with empty id");
      if (!seen.insert(v.id).second) {
        throw ValidationError(where + ": duplicate value id '" + v.id + "'");
      }
      if (v.surface_forms.empty() || v.surface_forms[0].empty()) {
        throw ValidationError(where + ": value '" + v.id +
                              "' has no surface form");
      }
    }
    for (const AttributeValue& v : cat.values) {
      for (const std::string& alias : v.aliases) {
        if (seen.count(alias)) {
          throw ValidationError(where + ": alias '" + alias +
                                "' collides with a value id");
        }
      }
    }
    if (cat.kind == CategoryKind::kOrdered && !scales_.count(cat.id)) {
      throw ValidationError(where + ": ordered category has no scale");
    }
  }
  for (const auto& [id, scale] : scales_) {
    const AttributeCategory* cat = FindCategory(id);
    const std::string where = "category " + id;
    if (cat == nullptr) {
      throw ValidationError(where + ": scale references unknown category");
    }
    if (cat->kind != CategoryKind::kOrdered) {
      throw ValidationError(where + ": scale on a nominal category");
    }
    if (scale.min_value == scale.max_value) {
      throw ValidationError(where + ": scale min equals max");
    }
    auto lo = ValueIndex(id, scale.min_value);
    auto hi = ValueIndex(id, scale.max_value);
    if (!lo || !hi) {
      throw ValidationError(where + ": scale names an unknown value");
    }
    size_t last = cat->values.size() - 1;
    bool ends = (*lo == 0 && *hi == last) || (*lo == last && *hi == 0);
    if (!ends) {
      throw ValidationError(where +
                            ": scale extremes must be the first and last "
                            "declared values");
    }
  }
}

Catalog Catalog::Parse(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("catalog parse error at line " +
                      std::to_string(LineOfOffset(text, e.byte)) + ": " +
                      e.what());
  }
  if (!doc.is_object() || !doc.contains("categories")) {
    throw ConfigError("catalog parse error at line 1: missing 'categories'");
  }
  std::vector<AttributeCategory> categories;
  try {
    for (const json& c : doc.at("categories")) {
      AttributeCategory cat;
      cat.id = c.at("id").get<std::string>();
      std::string kind = c.value("kind", "nominal");
      if (kind == "ordered") {
        cat.kind = CategoryKind::kOrdered;
      } else if (kind == "nominal") {
        cat.kind = CategoryKind::kNominal;
      } else {
        throw ValidationError("category " + cat.id + ": unknown kind '" +
                              kind + "'");
      }
      cat.removal_fallback = c.value("removal_fallback", "");
      const std::string where = "category " + cat.id;
      for (const json& v : c.at("values")) {
        AttributeValue value;
        if (v.is_string()) {
          value.id = v.get<std::string>();
          value.surface_forms = {value.id};
        } else {
          value.id = v.at("id").get<std::string>();
          value.surface_forms = StringList(v, "forms", where);
          if (value.surface_forms.empty()) value.surface_forms = {value.id};
          value.intensified_forms = StringList(v, "intensified", where);
          value.reduced_forms = StringList(v, "reduced", where);
          value.negated_forms = StringList(v, "negated", where);
          value.aliases = StringList(v, "aliases", where);
          if (v.contains("pronouns")) {
            const json& p = v.at("pronouns");
            value.pronouns = PronounSet{p.at("subject").get<std::string>(),
                                        p.at("object").get<std::string>(),
                                        p.at("possessive").get<std::string>()};
          }
        }
        cat.values.push_back(std::move(value));
      }
      categories.push_back(std::move(cat));
    }
    std::vector<OrderedScale> scales;
    if (doc.contains("scales")) {
      for (const json& s : doc.at("scales")) {
        scales.push_back({s.at("category").get<std::string>(),
                          s.at("min").get<std::string>(),
                          s.at("max").get<std::string>()});
      }
    }
    return Catalog(std::move(categories), std::move(scales));
  } catch (const json::exception& e) {
    throw ValidationError(std::string("catalog schema error: ") + e.what());
  }
}

std::string Catalog::Serialize() const {
  json doc;
  doc["categories"] = json::array();
  for (const AttributeCategory& cat : categories_) {
    json c;
    c["id"] = cat.id;
    c["kind"] = cat.kind == CategoryKind::kOrdered ? "ordered" : "nominal";
    if (!cat.removal_fallback.empty()) {
      c["removal_fallback"] = cat.removal_fallback;
    }
    c["values"] = json::array();
    for (const AttributeValue& v : cat.values) {
      json jv;
      jv["id"] = v.id;
      jv["forms"] = v.surface_forms;
      if (!v.intensified_forms.empty()) {
        jv["intensified"] = ListJson(v.intensified_forms);
      }
      if (!v.reduced_forms.empty()) jv["reduced"] = ListJson(v.reduced_forms);
      if (!v.negated_forms.empty()) jv["negated"] = ListJson(v.negated_forms);
      if (!v.aliases.empty()) jv["aliases"] = v.aliases;
      if (v.pronouns) {
        jv["pronouns"] = {{"subject", v.pronouns->subject},
                          {"object", v.pronouns->object},
                          {"possessive", v.pronouns->possessive}};
      }
      c["values"].push_back(std::move(jv));
    }
    doc["categories"].push_back(std::move(c));
  }
  doc["scales"] = json::array();
  for (const auto& [id, s] : scales_) {
    doc["scales"].push_back(
        {{"category", id}, {"min", s.min_value}, {"max", s.max_value}});
  }
  return doc.dump(2) + "\n";
}

const AttributeCategory* Catalog::FindCategory(std::string_view id) const {
  auto it = index_.find(id);
  return it == index_.end() ? nullptr : &categories_[it->second];
}

const AttributeCategory& Catalog::category(std::string_view id) const {
  const AttributeCategory* cat = FindCategory(id);
  if (cat == nullptr) {
    throw LookupError("unknown category '" + std::string(id) + "'");
  }
  return *cat;
}

std::optional<size_t> Catalog::ValueIndex(std::string_view category_id,
                                          std::string_view value_id) const {
  const AttributeCategory* cat = FindCategory(category_id);
  if (cat == nullptr) return std::nullopt;
  for (size_t i = 0; i < cat->values.size(); ++i) {
    if (cat->values[i].id == value_id) return i;
  }
  for (size_t i = 0; i < cat->values.size(); ++i) {
    for (const auto& alias : cat->values[i].aliases) {
      if (alias == value_id) return i;
    }
  }
  return std::nullopt;
}

const AttributeValue& Catalog::value(std::string_view category_id,
                                     std::string_view value_id) const {
  const AttributeCategory& cat = category(category_id);
  auto idx = ValueIndex(category_id, value_id);
  if (!idx) {
    throw LookupError("category " + cat.id + " has no value '" +
                      std::string(value_id) + "'");
  }
  return cat.values[*idx];
}

const OrderedScale* Catalog::FindScale(std::string_view category_id) const {
  auto it = scales_.find(std::string(category_id));
  return it == scales_.end() ? nullptr : &it->second;
}

std::string Catalog::Hash() const { return ShortHash(Serialize()); }

Catalog LoadCatalog(const std::filesystem::path& path) {
  std::string text;
  try {
    text = ReadFile(path);
  } catch (const UpstreamMissingError&) {
    throw ConfigError("catalog file not found: " + path.string());
  }
  return Catalog::Parse(text);
}

void WriteCatalog(const Catalog& catalog, const std::filesystem::path& path) {
  WriteFileAtomic(path, catalog.Serialize());
}

std::filesystem::path DefaultCatalogPath() {
  return DataDir() / "catalog" / "default.json";
}

std::vector<AttributeValue> PartitionsOf(const Catalog& catalog,
                                         std::string_view category_id) {
  return catalog.category(category_id).values;
}

std::pair<AttributeValue, AttributeValue> BoundaryValues(
    const Catalog& catalog, std::string_view category_id) {
  const AttributeCategory& cat = catalog.category(category_id);
  const OrderedScale* scale = catalog.FindScale(category_id);
  if (cat.kind != CategoryKind::kOrdered || scale == nullptr) {
    throw NotOrderedError("category " + cat.id + " is not ordered");
  }
  return {catalog.value(category_id, scale->min_value),
          catalog.value(category_id, scale->max_value)};
}

std::string DefaultNegation(std::string_view surface) {
  if (surface.starts_with("has ")) {
    return "does not have " + std::string(surface.substr(4));
  }
  if (surface.starts_with("is ")) {
    return "is not " + std::string(surface.substr(3));
  }
  return "not " + std::string(surface);
}

std::optional<std::string> SurfaceForm(const AttributeValue& value, int form,
                                       Modifier modifier) {
  int base_form =
      (form >= 0 && static_cast<size_t>(form) < value.surface_forms.size())
          ? form
          : 0;
  const std::string& base = value.surface_forms[base_form];
  switch (modifier) {
    case Modifier::kNone:
      return base;
    case Modifier::kIntensified: {
      const std::string& s = FormAt(value.intensified_forms, base_form);
      if (s.empty()) return std::nullopt;
      return s;
    }
    case Modifier::kReduced: {
      const std::string& s = FormAt(value.reduced_forms, base_form);
      if (s.empty()) return std::nullopt;
      return s;
    }
    case Modifier::kNegated: {
      const std::string& s = FormAt(value.negated_forms, base_form);
      if (!s.empty()) return s;
      return DefaultNegation(base);
    }
  }
  return std::nullopt;
}

}  // namespace fairmt
