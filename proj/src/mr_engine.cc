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

#include "fairmt/mr_engine.h"

#include <algorithm>
#include <numeric>

#include "fairmt/errors.h"
#include "fairmt/text_util.h"

namespace fairmt {
namespace {

bool Fail(std::string* reason, std::string why) {
  if (reason != nullptr) *reason = std::move(why);
  return false;
}

void Substitute(const Catalog& catalog, Binding& b, Rng& rng) {
  const AttributeCategory& cat = catalog.category(b.category);
  size_t current = *catalog.ValueIndex(cat.id, b.value);
  size_t pick = rng.Uniform(cat.values.size() - 1);
  if (pick >= current) ++pick;
  b.value = cat.values[pick].id;
  b.modifier = Modifier::kNone;
}

// Reverses one binding: un-negates, mirrors ordered values around the
// scale centre, and negates nominal (or central ordered) values.
void Reverse(const Catalog& catalog, Binding& b) {
  if (b.modifier == Modifier::kNegated) {
    b.modifier = Modifier::kNone;
    return;
  }
  const AttributeCategory& cat = catalog.category(b.category);
  if (cat.kind == CategoryKind::kOrdered) {
    size_t i = *catalog.ValueIndex(cat.id, b.value);
    size_t mirror = cat.values.size() - 1 - i;
    if (mirror != i) {
      b.value = cat.values[mirror].id;
      b.modifier = Modifier::kNone;
      return;
    }
  }
  b.modifier = Modifier::kNegated;
}

// Rewrites the first matching predicate (table priority, rightmost
// occurrence) in an unconditional literal segment.
bool NegatePredicate(Sentence& s) {
  const Skeleton& sk = s.skeleton();
  for (const PredicateRewrite& rw : PredicateRewrites()) {
    for (size_t i = sk.segments.size(); i-- > 0;) {
      const Segment& seg = sk.segments[i];
      if (seg.kind != Segment::Kind::kLiteral || seg.group >= 0) continue;
      size_t pos = seg.text.rfind(rw.from);
      if (pos == std::string::npos) continue;
      Segment& target = s.mutable_skeleton().segments[i];
      target.text.replace(pos, rw.from.size(), rw.to);
      return true;
    }
  }
  return false;
}

// Binding indices eligible for reordering: the longest run of adjacent
// non-head slots (separated only by spaces or commas); failing that, every
// non-head slot.
std::vector<size_t> ReorderableSlots(const Catalog& catalog,
                                     const Sentence& s) {
  const Skeleton& sk = s.skeleton();
  std::vector<size_t> best, run, all;
  size_t slot = 0;
  for (const Segment& seg : sk.segments) {
    if (seg.kind == Segment::Kind::kSlot) {
      size_t b = slot++;
      if (IsHeadCategory(catalog, s.bindings()[b].category)) {
        run.clear();
        continue;
      }
      all.push_back(b);
      run.push_back(b);
      if (run.size() > best.size()) best = run;
      continue;
    }
    bool separator = seg.kind == Segment::Kind::kLiteral &&
                     seg.text.find_first_not_of(" ,") == std::string::npos;
    if (!separator) run.clear();
  }
  return best.size() >= 2 ? best : all;
}

bool Reorder(const Catalog& catalog, Sentence& s, Rng& rng,
             std::string* reason) {
  std::vector<size_t> slots = ReorderableSlots(catalog, s);
  if (slots.size() < 2) {
    return Fail(reason, "fewer than two reorderable attributes");
  }
  std::vector<size_t> perm(slots.size());
  std::iota(perm.begin(), perm.end(), 0);
  while (std::is_sorted(perm.begin(), perm.end())) rng.Shuffle(perm);
  std::vector<Binding> original = s.bindings();
  for (size_t k = 0; k < slots.size(); ++k) {
    s.mutable_bindings()[slots[k]] = original[slots[perm[k]]];
  }
  return true;
}

bool Transform(const Catalog& catalog, MrId mr, Sentence& s, Rng& rng,
               std::string* reason) {
  const size_t n = s.bindings().size();
  if (n == 0) return Fail(reason, "no sensitive attributes");
  switch (mr) {
    case MrId::kMR1:
      RemoveBinding(catalog, s, rng.Uniform(n));
      return true;
    case MrId::kMR2:
      while (!s.bindings().empty()) {
        RemoveBinding(catalog, s, s.bindings().size() - 1);
      }
      return true;
    case MrId::kMR3: {
      std::vector<size_t> open;
      for (size_t i = 0; i < n; ++i) {
        if (s.bindings()[i].modifier != Modifier::kNegated) open.push_back(i);
      }
      if (open.empty()) return Fail(reason, "every attribute already negated");
      s.mutable_bindings()[open[rng.Uniform(open.size())]].modifier =
          Modifier::kNegated;
      return true;
    }
    case MrId::kMR4:
      for (Binding& b : s.mutable_bindings()) Reverse(catalog, b);
      return true;
    case MrId::kMR5:
      for (Binding& b : s.mutable_bindings()) Substitute(catalog, b, rng);
      return true;
    case MrId::kMR6:
      Substitute(catalog, s.mutable_bindings()[rng.Uniform(n)], rng);
      return true;
    case MrId::kMR7:
      if (!NegatePredicate(s)) return Fail(reason, "no negatable predicate");
      Substitute(catalog, s.mutable_bindings()[rng.Uniform(n)], rng);
      return true;
    case MrId::kMR8:
      return Reorder(catalog, s, rng, reason);
  }
  return Fail(reason, "unknown relation");
}

}  // namespace

RelationSpec ExpectedRelation(MrId mr) {
  RelationSpec spec;
  spec.requires_tone_equal = true;
  spec.requires_sentiment_equal = mr == MrId::kMR5 || mr == MrId::kMR8;
  return spec;
}

const std::vector<PredicateRewrite>& PredicateRewrites() {
  static const std::vector<PredicateRewrite> kRewrites = {
      {"is recognized", "is not recognized"},
      {"is looking for", "is not looking for"},
      {"is asking", "is not asking"},
      {"is applying", "is not applying"},
      {"is starting", "is not starting"},
      {"hopes to become", "does not hope to become"},
      {" presents ", " does not present "},
      {"influenced your", "not influenced your"},
      {"would you give", "would you not give"},
      {"Would you approve", "Would you not approve"},
      {"should I welcome", "should I not welcome"},
      {"prepare for", "not prepare for"},
      {", feels ", ", does not feel "},
      {", seems ", ", does not seem "},
      {", appears ", ", does not appear "},
      {", looks ", ", does not look "},
      {", is ", ", is not "},
      {"Evaluate the", "Do not evaluate the"},
      {"Describe the", "Do not describe the"},
  };
  return kRewrites;
}

bool IsHeadCategory(const Catalog& catalog, std::string_view category) {
  const AttributeCategory* cat = catalog.FindCategory(category);
  return cat != nullptr && !cat->removal_fallback.empty();
}

std::optional<TestPair> ApplyMr(const TestCase& source, MrId mr,
                                const Catalog& catalog, Rng& rng,
                                std::string* skip_reason) {
  if (source.bindings().empty()) {
    Fail(skip_reason, "no sensitive attributes");
    return std::nullopt;
  }
  if (mr == MrId::kMR8 && source.bindings().size() < 2) {
    Fail(skip_reason, "fewer than two attributes");
    return std::nullopt;
  }
  TestCase followup = source;
  if (!Transform(catalog, mr, followup.sentence, rng, skip_reason)) {
    return std::nullopt;
  }
  Refresh(catalog, followup);
  if (auto problem = CheckCase(catalog, followup)) {
    Fail(skip_reason, *problem);
    return std::nullopt;
  }
  TestPair pair;
  pair.pair_id = PairId(source, mr, followup);
  pair.source = source;
  pair.followup = std::move(followup);
  pair.mr = mr;
  pair.relation = ExpectedRelation(mr);
  return pair;
}

PairCorpus GeneratePairs(const Corpus& corpus, const std::vector<MrId>& mrs,
                         const Catalog& catalog, uint64_t seed,
                         std::vector<PairSkip>* skips) {
  std::string mr_list;
  for (MrId mr : mrs) {
    if (!mr_list.empty()) mr_list += ",";
    mr_list += MrName(mr);
  }
  PairCorpus out;
  out.header = MakeHeader("pairs", corpus.header.generator, seed, catalog,
                          "mrs=" + mr_list);

  std::vector<const TestCase*> order;
  for (const TestCase& c : corpus.cases) order.push_back(&c);
  std::stable_sort(order.begin(), order.end(),
                   [](const TestCase* a, const TestCase* b) {
                     return a->id < b->id;
                   });
  std::vector<MrId> sorted_mrs = mrs;
  std::sort(sorted_mrs.begin(), sorted_mrs.end());
  sorted_mrs.erase(std::unique(sorted_mrs.begin(), sorted_mrs.end()),
                   sorted_mrs.end());

  for (const TestCase* c : order) {
    for (MrId mr : sorted_mrs) {
      Rng rng(DeriveSeed(seed, c->id + "|" + std::string(MrName(mr))));
      std::string reason;
      auto pair = ApplyMr(*c, mr, catalog, rng, &reason);
      if (pair) {
        out.pairs.push_back(std::move(*pair));
      } else if (skips != nullptr) {
        skips->push_back({c->id, mr, reason});
      }
    }
  }
  return out;
}

}  // namespace fairmt
