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

#include "fairmt/sentence.h"

#include <array>
#include <utility>

#include "fairmt/errors.h"
#include "fairmt/text_util.h"

namespace fairmt {
namespace {

// In-band markers used while cleaning up a rendered buffer. None of them
// can appear in catalog or template text.
constexpr char kArticle = '\x1d';
constexpr char kSlotOpen = '\x1e';
constexpr char kSlotClose = '\x1f';

bool IsMarker(char c) {
  return c == kArticle || c == kSlotOpen || c == kSlotClose;
}

bool IsPunct(char c) {
  return c == ',' || c == '.' || c == '?' || c == '!' || c == ';' || c == ':';
}

bool IsTerminal(char c) {
  return c == '.' || c == '?' || c == '!' || c == ';' || c == ':';
}

bool ReplaceAll(std::string& s, std::string_view from, std::string_view to) {
  bool changed = false;
  size_t pos = 0;
  while ((pos = s.find(from, pos)) != std::string::npos) {
    s.replace(pos, from.size(), to);
    pos += to.size();
    changed = true;
  }
  return changed;
}

// Connectors left dangling when an attribute phrase disappears.
constexpr std::array<std::pair<std::string_view, std::string_view>, 6>
    kConnectorRules = {{
        {" who and ", " who "},
        {" that and ", " that "},
        {" and,", ","},
        {" and.", "."},
        {" and?", "?"},
        {" with and ", " with "},
    }};

// One cleanup pass; returns whether anything changed.
bool CleanupPass(std::string& buf) {
  std::string out;
  out.reserve(buf.size());
  for (size_t i = 0; i < buf.size(); ++i) {
    char c = buf[i];
    if (c == ' ') {
      // Collapse runs, drop leading spaces and spaces before punctuation.
      if (out.empty() || out.back() == ' ') continue;
      if (i + 1 < buf.size() && (IsPunct(buf[i + 1]) || buf[i + 1] == ' ')) {
        continue;
      }
      out.push_back(c);
      continue;
    }
    if (c == ',') {
      // Leading comma, doubled comma, or comma before terminal punctuation.
      if (out.empty()) continue;
      if (out.back() == ',') continue;
      size_t j = i + 1;
      while (j < buf.size() && buf[j] == ' ') ++j;
      if (j < buf.size() && (IsTerminal(buf[j]) || buf[j] == ',')) continue;
      if (j >= buf.size()) continue;
      // Comma straight after an article: "a , young" -> "a young".
      if (out.size() >= 2 && out[out.size() - 2] == kArticle) continue;
      out.push_back(c);
      continue;
    }
    out.push_back(c);
  }
  for (const auto& [from, to] : kConnectorRules) ReplaceAll(out, from, to);
  while (!out.empty() && out.back() == ' ') out.pop_back();
  bool changed = out != buf;
  buf = std::move(out);
  return changed;
}

std::string FirstWordAfter(std::string_view buf, size_t pos) {
  while (pos < buf.size() && (buf[pos] == ' ' || IsMarker(buf[pos]))) ++pos;
  std::string word;
  while (pos < buf.size() && buf[pos] != ' ' && !IsMarker(buf[pos]) &&
         !IsPunct(buf[pos])) {
    word.push_back(buf[pos]);
    ++pos;
  }
  return word;
}

std::string ResolveArticles(const std::string& buf) {
  std::string out;
  out.reserve(buf.size() + 8);
  for (size_t i = 0; i < buf.size(); ++i) {
    if (buf[i] != kArticle) {
      out.push_back(buf[i]);
      continue;
    }
    bool cap = i + 1 < buf.size() && buf[i + 1] == 'A';
    bool an = TakesAn(FirstWordAfter(buf, i + 2));
    out += cap ? "A" : "a";
    if (an) out.push_back('n');
    ++i;  // skip the case letter
  }
  return out;
}

const std::string& PronounText(const PronounSet& set, PronounCase c) {
  switch (c) {
    case PronounCase::kSubject:
      return set.subject;
    case PronounCase::kObject:
      return set.object;
    case PronounCase::kPossessive:
      return set.possessive;
  }
  return set.possessive;
}

const PronounSet& NeutralPronouns() {
  static const PronounSet kNeutral{"they", "them", "their"};
  return kNeutral;
}

}  // namespace

size_t Skeleton::SlotCount() const {
  size_t n = 0;
  for (const Segment& s : segments) {
    if (s.kind == Segment::Kind::kSlot) ++n;
  }
  return n;
}

Skeleton& Sentence::mutable_skeleton() {
  if (owned_ == nullptr || owned_ != skeleton_.get() ||
      skeleton_.use_count() != 1) {
    auto fresh = std::make_shared<Skeleton>(*skeleton_);
    owned_ = fresh.get();
    skeleton_ = std::move(fresh);
  }
  return *owned_;
}

int Sentence::FindBinding(std::string_view category) const {
  for (size_t i = 0; i < bindings_.size(); ++i) {
    if (bindings_[i].category == category) return static_cast<int>(i);
  }
  return -1;
}

bool TakesAn(std::string_view next_word) {
  std::string w = AsciiLower(next_word);
  if (w.empty()) return false;
  for (std::string_view p : {"eu", "uni", "one", "use", "usu", "uti"}) {
    if (w.starts_with(p)) return false;
  }
  for (std::string_view p : {"hour", "honest", "honor", "heir"}) {
    if (w.starts_with(p)) return true;
  }
  char c = w[0];
  return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
}

bool IsAgreementToken(std::string_view t) {
  static constexpr std::array<std::string_view, 12> kTokens = {
      "a",   "an",  "he",   "him",  "his",  "she",
      "her", "they", "them", "their", "hers", "theirs"};
  for (std::string_view k : kTokens) {
    if (t == k) return true;
  }
  return false;
}

std::string Render(const Catalog& catalog, Sentence& sentence) {
  const Skeleton& sk = sentence.skeleton();
  auto& bindings = sentence.mutable_bindings();
  if (sk.SlotCount() != bindings.size()) {
    throw ValidationError("sentence has " + std::to_string(sk.SlotCount()) +
                          " slots but " + std::to_string(bindings.size()) +
                          " bindings");
  }

  std::vector<int> slots_in_group(sk.groups.size(), 0);
  for (const Segment& seg : sk.segments) {
    if (seg.kind != Segment::Kind::kSlot) continue;
    for (int g = seg.group; g >= 0; g = sk.groups[g].parent) {
      ++slots_in_group[g];
    }
  }
  auto outermost_dead = [&](int g) {
    int dead = -1;
    for (; g >= 0; g = sk.groups[g].parent) {
      if (slots_in_group[g] == 0) dead = g;
    }
    return dead;
  };

  const PronounSet* anchor = &NeutralPronouns();
  for (const Binding& b : bindings) {
    if (b.modifier != Modifier::kNone) continue;
    const AttributeValue& v = catalog.value(b.category, b.value);
    if (v.pronouns) {
      anchor = &*v.pronouns;
      break;
    }
  }

  std::string buf;
  std::vector<bool> fallback_done(sk.groups.size(), false);
  size_t slot = 0;
  for (const Segment& seg : sk.segments) {
    int dead = outermost_dead(seg.group);
    if (dead >= 0) {
      if (!fallback_done[dead]) {
        buf += sk.groups[dead].fallback;
        fallback_done[dead] = true;
      }
      continue;
    }
    switch (seg.kind) {
      case Segment::Kind::kLiteral:
        buf += seg.text;
        break;
      case Segment::Kind::kSlot: {
        const Binding& b = bindings[slot++];
        const AttributeValue& v = catalog.value(b.category, b.value);
        auto surface = SurfaceForm(v, b.form, b.modifier);
        if (!surface) {
          throw ValidationError("value '" + b.value + "' of " + b.category +
                                " has no " +
                                std::string(ModifierName(b.modifier)) +
                                " form");
        }
        buf.push_back(kSlotOpen);
        buf += *surface;
        buf.push_back(kSlotClose);
        break;
      }
      case Segment::Kind::kPronoun:
        buf += PronounText(*anchor, seg.pronoun);
        break;
      case Segment::Kind::kArticle:
        buf.push_back(kArticle);
        buf.push_back(seg.capitalized ? 'A' : 'a');
        break;
    }
  }

  while (CleanupPass(buf)) {
  }
  buf = ResolveArticles(buf);

  std::string out;
  out.reserve(buf.size());
  size_t k = 0;
  for (char c : buf) {
    if (c == kSlotOpen) {
      bindings[k].span.begin = out.size();
    } else if (c == kSlotClose) {
      bindings[k].span.end = out.size();
      ++k;
    } else {
      out.push_back(c);
    }
  }
  return out;
}

std::string Realize(const Catalog& catalog, Sentence& sentence,
                    size_t binding_index, std::string_view value_id) {
  Binding& b = sentence.mutable_bindings().at(binding_index);
  const AttributeValue& v = catalog.value(b.category, value_id);
  b.value = v.id;
  b.modifier = Modifier::kNone;
  return Render(catalog, sentence);
}

void RemoveBinding(const Catalog& catalog, Sentence& sentence,
                   size_t binding_index) {
  if (binding_index >= sentence.bindings().size()) {
    throw LookupError("binding index out of range");
  }
  const std::string category = sentence.bindings()[binding_index].category;
  Skeleton& sk = sentence.mutable_skeleton();

  size_t seg_index = 0;
  for (size_t slot = 0; seg_index < sk.segments.size(); ++seg_index) {
    if (sk.segments[seg_index].kind != Segment::Kind::kSlot) continue;
    if (slot == binding_index) break;
    ++slot;
  }

  // Does some enclosing group hold no other slot? Then the group absorbs
  // the removal.
  std::vector<int> slots_in_group(sk.groups.size(), 0);
  for (const Segment& seg : sk.segments) {
    if (seg.kind != Segment::Kind::kSlot) continue;
    for (int g = seg.group; g >= 0; g = sk.groups[g].parent) {
      ++slots_in_group[g];
    }
  }
  bool absorbed = false;
  for (int g = sk.segments[seg_index].group; g >= 0; g = sk.groups[g].parent) {
    if (slots_in_group[g] == 1) absorbed = true;
  }

  const std::string& fallback = catalog.category(category).removal_fallback;
  if (!absorbed && !fallback.empty()) {
    Segment& seg = sk.segments[seg_index];
    seg.kind = Segment::Kind::kLiteral;
    seg.text = fallback;
  } else {
    sk.segments.erase(sk.segments.begin() +
                      static_cast<ptrdiff_t>(seg_index));
  }
  auto& bindings = sentence.mutable_bindings();
  bindings.erase(bindings.begin() + static_cast<ptrdiff_t>(binding_index));
}

}  // namespace fairmt
