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

#include <cmath>
#include <map>
#include <regex>
#include <set>
#include <string>
#include <vector>

#include "fairmt/errors.h"
#include "fairmt/text_util.h"
#include "gtest/gtest.h"

namespace fairmt {
namespace {

const Catalog& Cat() {
  static const Catalog* catalog = new Catalog(LoadCatalog(DefaultCatalogPath()));
  return *catalog;
}

const std::vector<Template>& Shipped() {
  static const auto* templates =
      new std::vector<Template>(LoadTemplates(DefaultTemplatesPath()));
  return *templates;
}

const std::regex& Frame() {
  static const std::regex* re = new std::regex(
      "^The ([A-Za-z-]+( [A-Za-z-]+)*), who is an? [a-z]+ from an? "
      "[a-z-]+ background, (feels|is|seems|appears|looks) "
      "(happy|sad|excited|angry|content|frustrated)\\.$");
  return *re;
}

TEST(TemplateBaselineTest, LexicographicOrderAndCount) {
  Corpus c = GenerateTemplateBaseline(Shipped(), Cat(), 100, 7);
  ASSERT_EQ(c.cases.size(), 100u);
  // T01 comes first, enumerated with the last placeholder varying fastest.
  EXPECT_EQ(c.cases[0].lineage.template_id, "T01");
  EXPECT_EQ(c.cases[0].bindings()[2].value, "English");
  EXPECT_EQ(c.cases[1].bindings()[2].value, "Spanish");
  EXPECT_EQ(c.cases[0].bindings()[0].value, c.cases[1].bindings()[0].value);
  EXPECT_EQ(c.header.generator, "template");
  for (const TestCase& tc : c.cases) {
    EXPECT_EQ(tc.generator, GeneratorKind::kTemplate);
    EXPECT_EQ(CheckCase(Cat(), tc), std::nullopt);
  }
}

TEST(TemplateBaselineTest, TemplateIdsAscend) {
  Corpus c = GenerateTemplateBaseline(Shipped(), Cat(), 7000, 7);
  ASSERT_EQ(c.cases.size(), 7000u);
  for (size_t i = 1; i < c.cases.size(); ++i) {
    ASSERT_LE(c.cases[i - 1].lineage.template_id,
              c.cases[i].lineage.template_id);
  }
}

TEST(TemplateBaselineTest, TruncationWarns) {
  Template t = ParseTemplate("x", "A [GENDER] [AGE] person is waiting.");
  std::vector<std::string> warnings;
  Corpus c = GenerateTemplateBaseline({t}, Cat(), 100, 1, &warnings);
  EXPECT_EQ(c.cases.size(), 6u);
  ASSERT_EQ(warnings.size(), 1u);
  EXPECT_NE(warnings[0].find("only 6"), std::string::npos) << warnings[0];
}

TEST(TemplateBaselineTest, SeedDoesNotChangeContent) {
  EXPECT_EQ(GenerateTemplateBaseline(Shipped(), Cat(), 50, 1).cases,
            GenerateTemplateBaseline(Shipped(), Cat(), 50, 2).cases);
}

TEST(AstraeaTest, MatchesFrameAndValidates) {
  AstraeaSpec spec = LoadAstraeaSpec(DefaultAstraeaPath(), Cat());
  Corpus c = GenerateAstraea(spec, Cat(), 500, 7);
  ASSERT_EQ(c.cases.size(), 500u);
  std::set<std::string> ids;
  for (const TestCase& tc : c.cases) {
    EXPECT_TRUE(std::regex_match(tc.text, Frame())) << tc.text;
    EXPECT_TRUE(AstraeaValidate(tc));
    EXPECT_EQ(tc.bindings().size(), 5u);
    EXPECT_TRUE(ids.insert(tc.id).second);
    EXPECT_EQ(CheckCase(Cat(), tc), std::nullopt);
  }
}

TEST(AstraeaTest, ArticlesAgree) {
  AstraeaSpec spec = LoadAstraeaSpec(DefaultAstraeaPath(), Cat());
  Corpus c = GenerateAstraea(spec, Cat(), 300, 3);
  std::regex bad("\\ba [aeiouAEIOU]|\\ban [^aeiouAEIOU]");
  for (const TestCase& tc : c.cases) {
    EXPECT_FALSE(std::regex_search(tc.text, bad)) << tc.text;
  }
}

TEST(AstraeaTest, Deterministic) {
  AstraeaSpec spec = LoadAstraeaSpec(DefaultAstraeaPath(), Cat());
  EXPECT_EQ(GenerateAstraea(spec, Cat(), 100, 7),
            GenerateAstraea(spec, Cat(), 100, 7));
  EXPECT_NE(GenerateAstraea(spec, Cat(), 100, 7).cases,
            GenerateAstraea(spec, Cat(), 100, 8).cases);
}

TEST(AstraeaTest, DegenerateWeightsPinValue) {
  std::string json = ReadFile(DefaultAstraeaPath());
  AstraeaSpec spec = ParseAstraeaSpec(json, Cat());
  spec.probs["OCCUPATION"] = {{"teacher", 0}, {"engineer", 1}, {"lawyer", 0},
                              {"doctor", 0},  {"artist", 0}};
  Corpus c = GenerateAstraea(spec, Cat(), 200, 1);
  for (const TestCase& tc : c.cases) {
    EXPECT_NE(tc.text.find("who is an engineer"), std::string::npos)
        << tc.text;
  }
}

TEST(AstraeaTest, WeightsAreNormalized) {
  AstraeaSpec spec = LoadAstraeaSpec(DefaultAstraeaPath(), Cat());
  for (const auto& [cat, table] : spec.probs) {
    double sum = 0;
    for (const auto& [v, p] : table) sum += p;
    EXPECT_NEAR(sum, 1.0, 1e-12) << cat;
  }
}

TEST(AstraeaTest, BadSpecsRejected) {
  EXPECT_THROW(
      ParseAstraeaSpec(R"({"person_categories": ["RELIGION"], "verbs": ["is"],
                           "objects": ["happy"],
                           "probabilities": {"RELIGION": {"Islam": 0}}})",
                       Cat()),
      ConfigError);
  EXPECT_THROW(
      ParseAstraeaSpec(R"({"person_categories": ["RELIGION"], "verbs": ["is"],
                           "objects": ["happy"],
                           "probabilities": {"RELIGION": {"Zoroaster": 1}}})",
                       Cat()),
      ConfigError);
}

TEST(AstraeaValidateTest, NeedsThreeCategories) {
  Template t = ParseTemplate("x", "The [GENDER] [AGE] person is waiting.");
  TestCase two = MakeCase(Cat(), Instantiate(t, Cat(), {0, 0}),
                          GeneratorKind::kAstraea, {});
  EXPECT_FALSE(AstraeaValidate(two));
}

// Uniform weights: every value's frequency lies within three standard
// deviations of its expectation.
TEST(AstraeaTest, UniformFrequencies) {
  AstraeaSpec spec = LoadAstraeaSpec(DefaultAstraeaPath(), Cat());
  Corpus c = GenerateAstraea(spec, Cat(), 10000, 7);
  std::map<std::string, std::map<std::string, double>> counts;
  std::map<std::string, double> totals;
  for (const TestCase& tc : c.cases) {
    for (const Binding& b : tc.bindings()) {
      counts[b.category][b.value] += 1;
      totals[b.category] += 1;
    }
  }
  for (const auto& [cat, table] : spec.probs) {
    for (const auto& [value, p] : table) {
      double m = totals[cat];
      double sigma = std::sqrt(m * p * (1 - p));
      EXPECT_LE(std::abs(counts[cat][value] - m * p), 3 * sigma)
          << cat << "/" << value;
    }
  }
}

}  // namespace
}  // namespace fairmt
