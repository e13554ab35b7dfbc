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

#ifndef FAIRMT_TEMPLATES_H_
#define FAIRMT_TEMPLATES_H_

#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "fairmt/catalog.h"
#include "fairmt/sentence.h"

namespace fairmt {

struct Placeholder {
  std::string category;
  int form = 0;

  bool operator==(const Placeholder&) const = default;
};

// A sentence pattern with typed placeholders.
//
// Syntax:
//   [CATEGORY] or [CATEGORY:n]   slot rendered with surface form n
//   [PRON:subj|obj|poss]         pronoun agreeing with the bound person
//   {text}                       optional span, dropped once its slots are gone
//   {text|fallback}              same, but replaced by `fallback` when dropped
// Standalone a/an become articles that agree with the following word.
struct Template {
  std::string id;
  std::string text;
  std::vector<Placeholder> placeholders;  // surface order
  std::shared_ptr<const Skeleton> skeleton;
};

// Throws ConfigError on malformed syntax.
Template ParseTemplate(std::string id, std::string text);

// Throws ValidationError naming the template when a placeholder is unknown
// to `catalog`.
void ValidateTemplate(const Template& t, const Catalog& catalog);

// One JSON object per line: {"id": ..., "text": ...}.
std::vector<Template> ParseTemplates(std::string_view jsonl);
std::vector<Template> LoadTemplates(const std::filesystem::path& path);
std::filesystem::path DefaultTemplatesPath();

// Size of the placeholder value product, saturating at UINT64_MAX.
uint64_t ProductSize(const Template& t, const Catalog& catalog);

// Decodes a product index into per-placeholder value indices; the last
// placeholder varies fastest, so ascending indices are lexicographic.
std::vector<size_t> DecodeIndex(const Template& t, const Catalog& catalog,
                                uint64_t index);

// Binds placeholder k to value `value_indices[k]` of its category.
Sentence Instantiate(const Template& t, const Catalog& catalog,
                     const std::vector<size_t>& value_indices);

// The template with every attribute removed, e.g. the neutral scenario.
std::string AttributeFreeText(const Template& t, const Catalog& catalog);

}  // namespace fairmt

#endif  // FAIRMT_TEMPLATES_H_
