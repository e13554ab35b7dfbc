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


#include "fairmt/corpus.h"

#include <set>
#include <string>
#include <vector>

#include "fairmt/errors.h"
#include "fairmt/genfair.h"
#include "fairmt/mr_engine.h"
#include "fairmt/templates.h"
#include "fairmt/text_util.h"
#include "gtest/gtest.h"

namespace fairmt {
namespace {

const Catalog& Cat() {
  static const Catalog* catalog = new Catalog(LoadCatalog(DefaultCatalogPath()));
  return *catalog;
}

Corpus SmallGenFair() {
  GenConfig config;
  config.seed = 3;
  config.base_cases = 60;
  config.max_cases = 400;
  return GenerateGenFair(LoadTemplates(DefaultTemplatesPath()), Cat(), config)
      .corpus;
}

TestCase Simple(const std::string& text) {
  Template t = ParseTemplate("s", "A [AGE] nurse.");
  Sentence s = Instantiate(t, Cat(), {0});
  TestCase c = MakeCase(Cat(), s, GeneratorKind::kTemplate, {"s", {}});
  c.text = text;
  c.id = CaseId(text, c.generator);
  return c;
}

TEST(CaseIdTest, ContentHash) {
  EXPECT_EQ(CaseId("x", GeneratorKind::kGenFair),
            CaseId("x", GeneratorKind::kGenFair));
  EXPECT_NE(CaseId("x", GeneratorKind::kGenFair),
            CaseId("y", GeneratorKind::kGenFair));
  EXPECT_NE(CaseId("x", GeneratorKind::kGenFair),
            CaseId("x", GeneratorKind::kAstraea));
}

TEST(NamesTest, RoundTrip) {
  for (GeneratorKind g : {GeneratorKind::kGenFair, GeneratorKind::kTemplate,
                          GeneratorKind::kAstraea}) {
    EXPECT_EQ(ParseGenerator(GeneratorName(g)), g);
  }
  for (MrId mr : kAllMrs) EXPECT_EQ(ParseMr(MrName(mr)), mr);
  EXPECT_THROW(ParseMr("MR9"), ConfigError);
  EXPECT_EQ(ParseMrList("MR1, MR3"),
            (std::vector<MrId>{MrId::kMR1, MrId::kMR3}));
  for (StepKind k : {StepKind::kEp, StepKind::kIntensify, StepKind::kReduce,
                     StepKind::kNegate, StepKind::kSubstitute, StepKind::kBva}) {
    EXPECT_EQ(ParseStep(StepName(k)), k);
  }
  EXPECT_EQ(StepName(StepKind::kIntensify), "mutate_intensify");
}

TEST(DedupTest, NormalizedFirstOccurrence) {
  Corpus c;
  c.cases = {Simple("A young nurse."), Simple("A  young nurse."),
             Simple("a young NURSE."), Simple("An old nurse.")};
  Corpus d = Dedup(c);
  ASSERT_EQ(d.cases.size(), 2u);
  EXPECT_EQ(d.cases[0].text, "A young nurse.");
  EXPECT_EQ(d.cases[1].text, "An old nurse.");
}

TEST(TakeFirstTest, PrefixAndHeader) {
  Corpus c = SmallGenFair();
  ASSERT_GE(c.cases.size(), 10u);
  Corpus first = TakeFirst(c, 3);
  ASSERT_EQ(first.cases.size(), 3u);
  for (size_t i = 0; i < 3; ++i) EXPECT_EQ(first.cases[i], c.cases[i]);
  Corpus none = TakeFirst(c, 0);
  EXPECT_TRUE(none.cases.empty());
  EXPECT_EQ(none.header, c.header);
  EXPECT_EQ(TakeFirst(c, 1u << 30).cases.size(), c.cases.size());
}

TEST(SerializationTest, CorpusRoundTrip) {
  Corpus c = SmallGenFair();
  c.header.inputs = {{"catalog.json", "abc"}};
  std::string text = SerializeCorpus(c);
  std::vector<std::string> warnings;
  Corpus back = ParseCorpus(text, &warnings);
  EXPECT_TRUE(warnings.empty());
  EXPECT_EQ(back, c);
  EXPECT_EQ(SerializeCorpus(back), text);
}

TEST(SerializationTest, PairRoundTrip) {
  Corpus c = TakeFirst(SmallGenFair(), 20);
  PairCorpus pairs = GeneratePairs(
      c, std::vector<MrId>(std::begin(kAllMrs), std::end(kAllMrs)), Cat(), 1);
  ASSERT_FALSE(pairs.pairs.empty());
  std::string text = SerializePairCorpus(pairs);
  EXPECT_EQ(ParsePairCorpus(text), pairs);
}

TEST(SerializationTest, SkeletonsAreSharedAcrossRecords) {
  Corpus c = SmallGenFair();
  std::string text = SerializeCorpus(c);
  size_t skeleton_records = 0;
  for (const std::string& line : SplitOn(text, '\n')) {
    skeleton_records += line.find("\"record\":\"skeleton\"") != std::string::npos;
  }
  EXPECT_GT(skeleton_records, 0u);
  EXPECT_LT(skeleton_records, c.cases.size());
}

TEST(SerializationTest, UnicodeRoundTripIsByteExact) {
  Corpus c;
  c.header = MakeHeader("cases", "template", 1, Cat(), "");
  c.cases.push_back(Simple("Une infirmi\xc3\xa8re \xe2\x80\x94 \xe6\x97\xa5\xe6\x9c\xac."));
  std::string text = SerializeCorpus(c);
  Corpus back = ParseCorpus(text);
  EXPECT_EQ(back.cases[0].text, c.cases[0].text);
  EXPECT_EQ(SerializeCorpus(back), text);
}

TEST(SerializationTest, TruncatedFileNamesFirstBadLine) {
  std::string text = SerializeCorpus(SmallGenFair());
  std::vector<std::string> lines = SplitOn(text, '\n');
  ASSERT_GT(lines.size(), 6u);
  std::string cut;
  for (size_t i = 0; i < 4; ++i) cut += lines[i] + "\n";
  cut += lines[4].substr(0, lines[4].size() / 2);
  try {
    ParseCorpus(cut);
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("line 5"), std::string::npos)
        << e.what();
  }
}

TEST(SerializationTest, HeaderRules) {
  Corpus c = TakeFirst(SmallGenFair(), 2);
  c.header.tool_version = "0.0.1";
  std::vector<std::string> warnings;
  Corpus back = ParseCorpus(SerializeCorpus(c), &warnings);
  EXPECT_EQ(warnings.size(), 1u);
  EXPECT_EQ(back.cases, c.cases);

  c.header.schema_version = 99;
  EXPECT_THROW(ParseCorpus(SerializeCorpus(c)), ConfigError);
  EXPECT_THROW(ParseCorpus(""), ConfigError);
  EXPECT_THROW(ParsePairCorpus(SerializeCorpus(TakeFirst(SmallGenFair(), 2))),
               ConfigError);
}

TEST(SerializationTest, TamperedRecordsRejected) {
  std::string text = SerializeCorpus(TakeFirst(SmallGenFair(), 5));
  // A case referencing a skeleton that was never declared.
  std::string no_skeleton;
  for (const std::string& line : SplitOn(text, '\n')) {
    if (line.find("\"record\":\"skeleton\"") == std::string::npos) {
      no_skeleton += line + "\n";
    }
  }
  EXPECT_THROW(ParseCorpus(no_skeleton), ConfigError);
}

TEST(CheckCaseTest, DetectsBrokenSpans) {
  Corpus c = TakeFirst(SmallGenFair(), 30);
  for (const TestCase& tc : c.cases) {
    EXPECT_EQ(CheckCase(Cat(), tc), std::nullopt) << tc.text;
  }
  TestCase bad = c.cases[0];
  bad.sentence.mutable_bindings()[0].span.end = bad.text.size() + 5;
  EXPECT_NE(CheckCase(bad), std::nullopt);
  TestCase shifted = c.cases[0];
  shifted.sentence.mutable_bindings()[0].span.begin += 1;
  EXPECT_NE(CheckCase(Cat(), shifted), std::nullopt);
  TestCase renamed = c.cases[0];
  renamed.text += " ";
  EXPECT_NE(CheckCase(renamed), std::nullopt);
}

TEST(FileTest, WriteReadRoundTrip) {
  auto path = std::filesystem::temp_directory_path() / "fairmt_corpus_test.jsonl";
  Corpus c = SmallGenFair();
  WriteCorpus(c, path);
  EXPECT_EQ(ReadCorpus(path), c);
  std::filesystem::remove(path);
  EXPECT_THROW(ReadCorpus(path), UpstreamMissingError);
}

}  // namespace
}  // namespace fairmt
