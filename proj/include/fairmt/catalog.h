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

#ifndef FAIRMT_CATALOG_H_
#define FAIRMT_CATALOG_H_

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fairmt {

enum class CategoryKind { kNominal, kOrdered };

// How a bound value is currently realized in a sentence.
enum class Modifier { kNone, kIntensified, kReduced, kNegated };

std::string_view ModifierName(Modifier m);
Modifier ParseModifier(std::string_view name);

struct PronounSet {
  std::string subject;
  std::string object;
  std::string possessive;

  bool operator==(const PronounSet&) const = default;
};

// One equivalence-partition representative of a category.
//
// `surface_forms[0]` is the canonical realization; templates can select
// another form by index. The intensified/reduced/negated lists run parallel
// to `surface_forms`; an empty entry means "no lexical form" (for negation
// the default rule applies instead).
struct AttributeValue {
  std::string id;
  std::vector<std::string> surface_forms;
  std::optional<PronounSet> pronouns;
  std::vector<std::string> intensified_forms;
  std::vector<std::string> reduced_forms;
  std::vector<std::string> negated_forms;
  // Alternate names that resolve to this value on lookup (e.g. an example
  // label that differs from the catalog label). Never rendered.
  std::vector<std::string> aliases;

  bool operator==(const AttributeValue&) const = default;
};

struct AttributeCategory {
  std::string id;
  CategoryKind kind = CategoryKind::kNominal;
  std::vector<AttributeValue> values;
  // Literal put in place of a removed value when no enclosing optional
  // group absorbs the removal (e.g. a head noun such as an occupation).
  std::string removal_fallback;

  bool operator==(const AttributeCategory&) const = default;
};

// Extremes of an ordered category. The declared value order is the total
// order; min and max are its two ends.
struct OrderedScale {
  std::string category_id;
  std::string min_value;
  std::string max_value;

  bool operator==(const OrderedScale&) const = default;
};

class Catalog {
 public:
  Catalog() = default;

  // Builds and validates; throws ValidationError naming the category.
  Catalog(std::vector<AttributeCategory> categories,
          std::vector<OrderedScale> scales);

  // Parses the structured catalog document. Throws ConfigError with the
  // line number on syntax errors, ValidationError on invariant breaches.
  static Catalog Parse(std::string_view text);

  // Canonical serialization; Parse(Serialize()) == *this.
  std::string Serialize() const;

  const std::vector<AttributeCategory>& categories() const {
    return categories_;
  }
  const std::map<std::string, OrderedScale>& scales() const { return scales_; }

  const AttributeCategory* FindCategory(std::string_view id) const;
  // Throws LookupError.
  const AttributeCategory& category(std::string_view id) const;

  // Position of a value (or alias) within its category, if present.
  std::optional<size_t> ValueIndex(std::string_view category_id,
                                   std::string_view value_id) const;
  // Throws LookupError.
  const AttributeValue& value(std::string_view category_id,
                              std::string_view value_id) const;

  const OrderedScale* FindScale(std::string_view category_id) const;

  std::string Hash() const;

  bool operator==(const Catalog& other) const {
    return categories_ == other.categories_ && scales_ == other.scales_;
  }

 private:
  void Validate() const;

  std::vector<AttributeCategory> categories_;
  std::map<std::string, size_t, std::less<>> index_;
  std::map<std::string, OrderedScale> scales_;
};

Catalog LoadCatalog(const std::filesystem::path& path);

void WriteCatalog(const Catalog& catalog, const std::filesystem::path& path);

// Location of the catalog shipped with the project.
std::filesystem::path DefaultCatalogPath();

// All values of a category in declaration order. Throws LookupError.
std::vector<AttributeValue> PartitionsOf(const Catalog& catalog,
                                         std::string_view category_id);

// (min, max) of an ordered category. Throws NotOrderedError for nominal
// categories and LookupError for unknown ones.
std::pair<AttributeValue, AttributeValue> BoundaryValues(
    const Catalog& catalog, std::string_view category_id);

// "has X" -> "does not have X", "is X" -> "is not X", otherwise "not X".
std::string DefaultNegation(std::string_view surface);

// Text realizing `value` with surface form `form` under `modifier`, or
// nullopt when the value has no such lexical form.
std::optional<std::string> SurfaceForm(const AttributeValue& value, int form,
                                       Modifier modifier);

}  // namespace fairmt

#endif  // FAIRMT_CATALOG_H_
