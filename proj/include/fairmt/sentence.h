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

#ifndef FAIRMT_SENTENCE_H_
#define FAIRMT_SENTENCE_H_

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "fairmt/catalog.h"

namespace fairmt {

// Byte offsets into the rendered UTF-8 text, half-open.
struct Span {
  size_t begin = 0;
  size_t end = 0;

  bool operator==(const Span&) const = default;
};

// A sensitive attribute bound into a sentence.
struct Binding {
  std::string category;
  std::string value;
  int form = 0;
  Modifier modifier = Modifier::kNone;
  Span span;

  bool operator==(const Binding&) const = default;
};

enum class PronounCase { kSubject, kObject, kPossessive };

struct Segment {
  enum class Kind { kLiteral, kSlot, kPronoun, kArticle };

  Kind kind = Kind::kLiteral;
  std::string text;  // kLiteral only
  PronounCase pronoun = PronounCase::kPossessive;
  bool capitalized = false;  // kArticle only
  // Innermost optional group containing this segment, -1 for none.
  int group = -1;

  bool operator==(const Segment&) const = default;
};

// An optional phrase. When every slot inside it (transitively) has been
// removed, the whole phrase renders as `fallback`.
struct Group {
  int parent = -1;
  std::string fallback;

  bool operator==(const Group&) const = default;
};

// The fixed part of a sentence: literals, slot positions, agreement
// points. Shared between all cases instantiated from one template.
struct Skeleton {
  std::vector<Segment> segments;
  std::vector<Group> groups;

  size_t SlotCount() const;
  bool operator==(const Skeleton&) const = default;
};

// Skeleton plus one binding per slot. bindings[k] fills the k-th slot
// segment, so binding order is always surface order.
class Sentence {
 public:
  Sentence() : skeleton_(std::make_shared<const Skeleton>()) {}
  Sentence(std::shared_ptr<const Skeleton> skeleton,
           std::vector<Binding> bindings)
      : skeleton_(std::move(skeleton)), bindings_(std::move(bindings)) {}

  const Skeleton& skeleton() const { return *skeleton_; }
  // Copy-on-write access.
  Skeleton& mutable_skeleton();

  const std::vector<Binding>& bindings() const { return bindings_; }
  std::vector<Binding>& mutable_bindings() { return bindings_; }

  // Index of the binding for `category`, or -1.
  int FindBinding(std::string_view category) const;

  bool operator==(const Sentence& other) const {
    return bindings_ == other.bindings_ &&
           (skeleton_ == other.skeleton_ || *skeleton_ == *other.skeleton_);
  }

 private:
  std::shared_ptr<const Skeleton> skeleton_;
  // Non-const alias of skeleton_ when this sentence allocated it.
  Skeleton* owned_ = nullptr;
  std::vector<Binding> bindings_;
};

// Renders the sentence, applying article agreement, pronoun agreement,
// optional-group removal and punctuation cleanup. Updates every binding's
// span. Throws ValidationError if a binding has no realization.
std::string Render(const Catalog& catalog, Sentence& sentence);

// Rebinds `binding_index` to `value_id` (plain surface form) and returns
// the re-rendered text, so pronouns and articles follow the new value.
std::string Realize(const Catalog& catalog, Sentence& sentence,
                    size_t binding_index, std::string_view value_id);

// Deletes a binding and its slot. Enclosing groups left without slots
// collapse to their fallback; otherwise the category's removal fallback,
// if any, takes the slot's place.
void RemoveBinding(const Catalog& catalog, Sentence& sentence,
                   size_t binding_index);

// Indefinite article choice for the word that follows it.
bool TakesAn(std::string_view next_word);

// Words that agreement rewrites may change: articles and pronouns.
bool IsAgreementToken(std::string_view casefolded_token);

}  // namespace fairmt

#endif  // FAIRMT_SENTENCE_H_
