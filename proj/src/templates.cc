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

#include "fairmt/templates.h"

#include <cctype>
#include <limits>
#include <set>

#include "fairmt/errors.h"
#include "fairmt/text_util.h"
#include "json.hpp"

namespace fairmt {
namespace {

bool IsArticleWord(std::string_view w) {
  return w == "a" || w == "an" || w == "A" || w == "An";
}

class TemplateParser {
 public:
  TemplateParser(const std::string& id, const std::string& text)
      : id_(id), text_(text) {}

  Template Parse() {
    for (size_t i = 0; i < text_.size(); ++i) {
      char c = text_[i];
      if (!open_.empty() && open_.back().in_fallback) {
        ParseFallbackChar(c);
        continue;
      }
      switch (c) {
        case '[': {
          size_t close = text_.find(']', i);
          if (close == std::string::npos) Fail("unterminated '['");
          FlushLiteral();
          ParsePlaceholder(text_.substr(i + 1, close - i - 1));
          i = close;
          break;
        }
        case ']':
          Fail("unexpected ']'");
          break;
        case '{':
          FlushLiteral();
          skeleton_.groups.push_back({CurrentGroup(), ""});
          open_.push_back({static_cast<int>(skeleton_.groups.size()) - 1,
                           false, slots_});
          break;
        case '|':
          if (open_.empty()) Fail("'|' outside an optional group");
          FlushLiteral();
          CloseGroupBody();
          open_.back().in_fallback = true;
          break;
        case '}':
          if (open_.empty()) Fail("unbalanced '}'");
          FlushLiteral();
          CloseGroupBody();
          open_.pop_back();
          break;
        default:
          literal_.push_back(c);
      }
    }
    if (!open_.empty()) Fail("unclosed '{'");
    FlushLiteral();
    if (placeholders_.empty()) Fail("no placeholders");

    Template t;
    t.id = id_;
    t.text = text_;
    t.placeholders = std::move(placeholders_);
    t.skeleton = std::make_shared<const Skeleton>(std::move(skeleton_));
    return t;
  }

 private:
  struct Open {
    int group;
    bool in_fallback;
    size_t slots_at_open;
  };

  [[noreturn]] void Fail(const std::string& what) const {
    throw ConfigError("template " + id_ + ": " + what);
  }

  int CurrentGroup() const { return open_.empty() ? -1 : open_.back().group; }

  void CloseGroupBody() {
    if (open_.back().in_fallback) return;
    if (slots_ == open_.back().slots_at_open) {
      Fail("optional group without a placeholder");
    }
  }

  void ParseFallbackChar(char c) {
    if (c == '}') {
      open_.pop_back();
      return;
    }
    if (c == '[' || c == '{' || c == '|' || c == ']') {
      Fail("fallback text must be plain");
    }
    skeleton_.groups[open_.back().group].fallback.push_back(c);
  }

  void ParsePlaceholder(const std::string& body) {
    std::string name = body;
    int form = 0;
    if (size_t colon = body.find(':'); colon != std::string::npos) {
      name = body.substr(0, colon);
      std::string arg = body.substr(colon + 1);
      if (name == "PRON") {
        Segment seg;
        seg.kind = Segment::Kind::kPronoun;
        seg.group = CurrentGroup();
        if (arg == "subj") {
          seg.pronoun = PronounCase::kSubject;
        } else if (arg == "obj") {
          seg.pronoun = PronounCase::kObject;
        } else if (arg == "poss") {
          seg.pronoun = PronounCase::kPossessive;
        } else {
          Fail("unknown pronoun case '" + arg + "'");
        }
        skeleton_.segments.push_back(std::move(seg));
        last_was_word_ = true;
        return;
      }
      try {
        size_t used = 0;
        form = std::stoi(arg, &used);
        if (used != arg.size() || form < 0) throw std::invalid_argument(arg);
      } catch (const std::exception&) {
        Fail("bad surface form index in [" + body + "]");
      }
    }
    name = Trim(name);
    if (name.empty()) Fail("empty placeholder");
    if (!seen_.insert(name).second) {
      Fail("category " + name + " appears more than once");
    }
    placeholders_.push_back({name, form});
    Segment seg;
    seg.kind = Segment::Kind::kSlot;
    seg.group = CurrentGroup();
    skeleton_.segments.push_back(std::move(seg));
    ++slots_;
    last_was_word_ = true;
  }

  // Emits the pending literal text, lifting standalone articles into
  // agreement segments.
  void FlushLiteral() {
    if (literal_.empty()) return;
    std::string pending;
    size_t i = 0;
    while (i < literal_.size()) {
      size_t j = i;
      while (j < literal_.size() && std::isalpha(static_cast<unsigned char>(
                                        literal_[j]))) {
        ++j;
      }
      if (j == i) {
        pending.push_back(literal_[i]);
        ++i;
        continue;
      }
      std::string_view word(literal_.data() + i, j - i);
      bool boundary_before =
          i > 0 ? literal_[i - 1] == ' ' : !last_was_word_;
      bool space_after = j < literal_.size() && literal_[j] == ' ';
      if (IsArticleWord(word) && boundary_before && space_after) {
        PushLiteral(std::move(pending));
        pending.clear();
        Segment seg;
        seg.kind = Segment::Kind::kArticle;
        seg.capitalized = word[0] == 'A';
        seg.group = CurrentGroup();
        skeleton_.segments.push_back(std::move(seg));
      } else {
        pending.append(word);
      }
      i = j;
    }
    PushLiteral(std::move(pending));
    last_was_word_ = !literal_.empty() && literal_.back() != ' ';
    literal_.clear();
  }

  void PushLiteral(std::string text) {
    if (text.empty()) return;
    Segment seg;
    seg.kind = Segment::Kind::kLiteral;
    seg.text = std::move(text);
    seg.group = CurrentGroup();
    skeleton_.segments.push_back(std::move(seg));
  }

  const std::string& id_;
  const std::string& text_;
  Skeleton skeleton_;
  std::vector<Placeholder> placeholders_;
  std::set<std::string> seen_;
  std::vector<Open> open_;
  std::string literal_;
  size_t slots_ = 0;
  bool last_was_word_ = false;
};

}  // namespace

Template ParseTemplate(std::string id, std::string text) {
  if (id.empty()) throw ConfigError("template without an id");
  return TemplateParser(id, text).Parse();
}

void ValidateTemplate(const Template& t, const Catalog& catalog) {
  if (t.placeholders.empty()) {
    throw ValidationError("template " + t.id + ": no placeholders");
  }
  for (const Placeholder& p : t.placeholders) {
    if (catalog.FindCategory(p.category) == nullptr) {
      throw ValidationError("template " + t.id +
                            ": unknown placeholder category " + p.category);
    }
  }
}

std::vector<Template> ParseTemplates(std::string_view jsonl) {
  std::vector<Template> out;
  std::set<std::string> ids;
  int line_no = 0;
  for (const std::string& line : SplitOn(jsonl, '\n')) {
    ++line_no;
    if (Trim(line).empty()) continue;
    try {
      nlohmann::json j = nlohmann::json::parse(line);
      Template t = ParseTemplate(j.at("id").get<std::string>(),
                                 j.at("text").get<std::string>());
      if (!ids.insert(t.id).second) {
        throw ConfigError("duplicate template id " + t.id);
      }
      out.push_back(std::move(t));
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError("line " + std::to_string(line_no) + ": " + e.what());
    } catch (const ConfigError& e) {
      throw ConfigError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

std::vector<Template> LoadTemplates(const std::filesystem::path& path) {
  return ParseTemplates(ReadFile(path));
}

std::filesystem::path DefaultTemplatesPath() {
  return DataDir() / "templates" / "genfair_15.jsonl";
}

uint64_t ProductSize(const Template& t, const Catalog& catalog) {
  uint64_t n = 1;
  for (const Placeholder& p : t.placeholders) {
    uint64_t k = catalog.category(p.category).values.size();
    if (n > std::numeric_limits<uint64_t>::max() / k) {
      return std::numeric_limits<uint64_t>::max();
    }
    n *= k;
  }
  return n;
}

std::vector<size_t> DecodeIndex(const Template& t, const Catalog& catalog,
                                uint64_t index) {
  std::vector<size_t> digits(t.placeholders.size());
  for (size_t k = t.placeholders.size(); k-- > 0;) {
    uint64_t radix = catalog.category(t.placeholders[k].category).values.size();
    digits[k] = static_cast<size_t>(index % radix);
    index /= radix;
  }
  return digits;
}

Sentence Instantiate(const Template& t, const Catalog& catalog,
                     const std::vector<size_t>& value_indices) {
  if (value_indices.size() != t.placeholders.size()) {
    throw ValidationError("template " + t.id + ": expected " +
                          std::to_string(t.placeholders.size()) + " values");
  }
  std::vector<Binding> bindings;
  bindings.reserve(t.placeholders.size());
  for (size_t k = 0; k < t.placeholders.size(); ++k) {
    const AttributeCategory& cat = catalog.category(t.placeholders[k].category);
    if (value_indices[k] >= cat.values.size()) {
      throw ValidationError("template " + t.id + ": value index out of range for " +
                            cat.id);
    }
    Binding b;
    b.category = cat.id;
    b.value = cat.values[value_indices[k]].id;
    b.form = t.placeholders[k].form;
    bindings.push_back(std::move(b));
  }
  return Sentence(t.skeleton, std::move(bindings));
}

std::string AttributeFreeText(const Template& t, const Catalog& catalog) {
  Sentence s = Instantiate(
      t, catalog, std::vector<size_t>(t.placeholders.size(), 0));
  while (!s.bindings().empty()) RemoveBinding(catalog, s, 0);
  return Render(catalog, s);
}

}  // namespace fairmt
