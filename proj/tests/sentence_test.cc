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

#include <map>
#include <string>
#include <vector>

#include "fairmt/catalog.h"
#include "fairmt/errors.h"
#include "fairmt/rng.h"
#include "fairmt/templates.h"
#include "fairmt/text_util.h"
#include "gtest/gtest.h"

namespace fairmt {
namespace {

const Catalog& Cat() {
  static const Catalog* catalog = new Catalog(LoadCatalog(DefaultCatalogPath()));
  return *catalog;
}

// Instantiates `text` with the given value ids, one per placeholder.
Sentence Make(const std::string& text, const std::vector<std::string>& values) {
  Template t = ParseTemplate("t", text);
  std::vector<size_t> idx;
  for (size_t i = 0; i < values.size(); ++i) {
    idx.push_back(*Cat().ValueIndex(t.placeholders[i].category, values[i]));
  }
  return Instantiate(t, Cat(), idx);
}

// Problems a rendered sentence must never have.
std::string Defects(const std::string& text) {
  if (text.find("  ") != std::string::npos) return "double space";
  if (text.find(" ,") != std::string::npos) return "space before comma";
  if (text.find(",,") != std::string::npos) return "double comma";
  if (text.find(", .") != std::string::npos) return "dangling comma";
  if (text.find('[') != std::string::npos) return "unresolved placeholder";
  if (text.find('{') != std::string::npos) return "unresolved group";
  if (!text.empty() && (text.front() == ' ' || text.back() == ' ')) {
    return "edge space";
  }
  auto tokens = WordTokens(text);
  for (size_t i = 0; i + 1 < tokens.size(); ++i) {
    bool det_a = tokens[i] == "a" || tokens[i] == "an" || tokens[i] == "the";
    bool det_b = tokens[i + 1] == "a" || tokens[i + 1] == "an" ||
                 tokens[i + 1] == "the";
    if (det_a && det_b) return "consecutive determiners";
  }
  return "";
}

void ExpectSpansMatch(const Sentence& s, const std::string& text) {
  for (const Binding& b : s.bindings()) {
    ASSERT_LE(b.span.end, text.size());
    auto form = SurfaceForm(Cat().value(b.category, b.value), b.form,
                            b.modifier);
    ASSERT_TRUE(form.has_value());
    EXPECT_EQ(text.substr(b.span.begin, b.span.end - b.span.begin), *form);
  }
}

TEST(RenderTest, ArticleAgreement) {
  Sentence s = Make("She met a [ETHNICITY] nurse.", {"Asian"});
  EXPECT_EQ(Render(Cat(), s), "She met an Asian nurse.");
  Sentence t = Make("A [ETHNICITY] nurse.", {"Hispanic"});
  EXPECT_EQ(Render(Cat(), t), "A Hispanic nurse.");
  Sentence u = Make("A [ETHNICITY] nurse.", {"African-American"});
  EXPECT_EQ(Render(Cat(), u), "An African-American nurse.");
}

TEST(RenderTest, PronounsFollowGender) {
  Sentence s = Make("A [GENDER] nurse is recognized for [PRON:poss] care.",
                    {"male"});
  EXPECT_EQ(Render(Cat(), s), "A male nurse is recognized for his care.");
  std::string text = Realize(Cat(), s, 0, "female");
  EXPECT_EQ(text, "A female nurse is recognized for her care.");
  ExpectSpansMatch(s, text);
}

TEST(RenderTest, NoGenderMeansNeutralPronoun) {
  Sentence s = Make("A [AGE] nurse thanks [PRON:obj].", {"young"});
  EXPECT_EQ(Render(Cat(), s), "A young nurse thanks them.");
}

TEST(RenderTest, IdentityRealizationLeavesContextAlone) {
  Sentence s = Make("An [OCCUPATION] arrived.", {"engineer"});
  std::string before = Render(Cat(), s);
  EXPECT_EQ(before, "An engineer arrived.");
  EXPECT_EQ(Realize(Cat(), s, 0, "engineer"), before);
}

TEST(RenderTest, SpansSliceSurfaceForms) {
  Sentence s = Make("A [AGE] [ETHNICITY] [GENDER] [OCCUPATION] works.",
                    {"elderly", "Asian", "female", "engineer"});
  std::string text = Render(Cat(), s);
  EXPECT_EQ(text, "An elderly Asian female engineer works.");
  ExpectSpansMatch(s, text);
}

TEST(RemoveBindingTest, GroupCollapsesWithItsSlot) {
  Sentence s = Make("A [OCCUPATION]{ who speaks [LANGUAGE]} waits.",
                    {"doctor", "French"});
  RemoveBinding(Cat(), s, 1);
  EXPECT_EQ(Render(Cat(), s), "A doctor waits.");
  EXPECT_EQ(s.bindings().size(), 1u);
}

TEST(RemoveBindingTest, GroupFallback) {
  Sentence s = Make("How has {being [RELIGION:1]|your life} shaped you?",
                    {"Islam"});
  EXPECT_EQ(Render(Cat(), s), "How has being Muslim shaped you?");
  RemoveBinding(Cat(), s, 0);
  EXPECT_EQ(Render(Cat(), s), "How has your life shaped you?");
}

TEST(RemoveBindingTest, HeadNounUsesCategoryFallback) {
  Sentence s = Make("A [AGE] [OCCUPATION] waits.", {"young", "engineer"});
  RemoveBinding(Cat(), s, 1);
  EXPECT_EQ(Render(Cat(), s), "A young professional waits.");
  RemoveBinding(Cat(), s, 0);
  EXPECT_EQ(Render(Cat(), s), "A professional waits.");
}

TEST(RemoveBindingTest, ArticleFollowsNewNeighbour) {
  Sentence s = Make("A [ETHNICITY] [GENDER] nurse.", {"Asian", "male"});
  EXPECT_EQ(Render(Cat(), s), "An Asian male nurse.");
  RemoveBinding(Cat(), s, 0);
  EXPECT_EQ(Render(Cat(), s), "A male nurse.");
}

TEST(RemoveBindingTest, ConnectorCleanup) {
  Sentence s = Make(
      "A [OCCUPATION]{, who [FAMILY_STATUS]{ and is [MARITAL STATUS]},} waits.",
      {"lawyer", "three kids", "married"});
  EXPECT_EQ(Render(Cat(), s),
            "A lawyer, who has three kids and is married, waits.");
  RemoveBinding(Cat(), s, 1);
  EXPECT_EQ(Render(Cat(), s), "A lawyer, who is married, waits.");
}

TEST(SentenceTest, CopyOnWriteSkeleton) {
  Sentence a = Make("A [AGE] nurse.", {"young"});
  Sentence b = a;
  b.mutable_skeleton().segments.back().text = " doctor.";
  EXPECT_NE(a.skeleton(), b.skeleton());
  EXPECT_EQ(Render(Cat(), a), "A young nurse.");
  EXPECT_EQ(Render(Cat(), b), "A young doctor.");
}

TEST(TakesAnTest, VowelHeuristic) {
  EXPECT_TRUE(TakesAn("Asian"));
  EXPECT_TRUE(TakesAn("elderly"));
  EXPECT_FALSE(TakesAn("young"));
  EXPECT_FALSE(TakesAn("male"));
}

// Property: random templates assembled from fragments always render
// cleanly, and keep rendering cleanly as bindings are removed one by one.
std::string RandomTemplate(Rng& rng, std::vector<std::string>* cats) {
  static const std::vector<std::string> kPre = {"[AGE]", "[ETHNICITY]",
                                                "[GENDER]", "[EXPERIENCE]",
                                                "[POLITICAL VIEWS]"};
  static const std::vector<std::string> kPost = {
      "{ who speaks [LANGUAGE]}", "{ from a [SOCIAL STATUS] background}",
      "{, who [FAMILY_STATUS],}", "{ who practices [RELIGION]}",
      "{ who is [MARITAL STATUS]}",
      "{ with [ECONOMIC CONDITIONS:1]}"};
  std::vector<std::string> pre = kPre, post = kPost;
  rng.Shuffle(pre);
  rng.Shuffle(post);
  std::string text = rng.Uniform(2) ? "A" : "Today a";
  size_t npre = rng.Uniform(4);
  for (size_t i = 0; i < npre; ++i) text += (i && rng.Uniform(3) == 0 ? ", " : " ") + pre[i];
  text += " [OCCUPATION]";
  size_t npost = rng.Uniform(3);
  for (size_t i = 0; i < npost; ++i) text += post[i];
  text += rng.Uniform(2) ? " thanks [PRON:obj]." : " is praised for [PRON:poss] work.";
  Template t = ParseTemplate("r", text);
  cats->clear();
  for (const auto& p : t.placeholders) cats->push_back(p.category);
  return text;
}

TEST(RenderPropertyTest, RandomTemplatesRenderCleanly) {
  Rng rng(77);
  for (int trial = 0; trial < 400; ++trial) {
    std::vector<std::string> cats;
    std::string text = RandomTemplate(rng, &cats);
    Template t = ParseTemplate("r", text);
    std::vector<size_t> idx;
    for (const auto& c : cats) idx.push_back(rng.Uniform(Cat().category(c).values.size()));
    Sentence s = Instantiate(t, Cat(), idx);
    std::string out = Render(Cat(), s);
    ASSERT_EQ(Defects(out), "") << text << " -> " << out;
    ExpectSpansMatch(s, out);
    while (!s.bindings().empty()) {
      RemoveBinding(Cat(), s, rng.Uniform(s.bindings().size()));
      out = Render(Cat(), s);
      ASSERT_EQ(Defects(out), "") << text << " -> " << out;
      ExpectSpansMatch(s, out);
    }
  }
}

}  // namespace
}  // namespace fairmt
