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


#include "fairmt/tone.h"

#include <algorithm>
#include <array>
#include <memory>
#include <string>
#include <vector>

#include "fairmt/errors.h"
#include "fairmt/rng.h"
#include "gtest/gtest.h"
#include "stub_server.h"

namespace fairmt {
namespace {

using Json = nlohmann::json;

LexiconToneClassifier Builtin(double margin = 0.0) {
  return LexiconToneClassifier(LoadToneLexicon(DefaultToneLexiconPath()),
                               margin);
}

double Sum(const std::array<double, kNumTones>& a) {
  double s = 0;
  for (double x : a) s += x;
  return s;
}

TEST(ToneNamesTest, RoundTrip) {
  for (size_t i = 0; i < kNumTones; ++i) {
    Tone t = static_cast<Tone>(i);
    EXPECT_EQ(ParseTone(ToneName(t)), t);
  }
  EXPECT_EQ(ParseTone("surprised"), Tone::kSurprise);
  EXPECT_THROW(ParseTone("bored"), ConfigError);
  EXPECT_EQ(ParseSentiment("negative"), Sentiment::kNegative);
}

TEST(LexiconToneTest, HappyText) {
  ToneReport r = Builtin().Classify("I am thrilled and delighted");
  EXPECT_EQ(r.tone, Tone::kHappy);
  EXPECT_EQ(r.sentiment, Sentiment::kPositive);
  // Two hits for happy: (1+2) / (6+2).
  EXPECT_DOUBLE_EQ(r.tone_scores[0], 3.0 / 8.0);
  EXPECT_DOUBLE_EQ(r.tone_scores[5], 1.0 / 8.0);
}

TEST(LexiconToneTest, EmptyTextIsNeutralAndUniform) {
  ToneReport r = Builtin().Classify("");
  EXPECT_EQ(r.tone, Tone::kNeutral);
  EXPECT_EQ(r.sentiment, Sentiment::kNeutral);
  for (double s : r.tone_scores) EXPECT_DOUBLE_EQ(s, 1.0 / 6.0);
  EXPECT_EQ(Builtin().Classify("The cat sat on the mat.").tone, Tone::kNeutral);
}

TEST(LexiconToneTest, TiesGoToEarlierLabelUnlessMargin) {
  EXPECT_EQ(Builtin().Classify("happy but sad").tone, Tone::kHappy);
  EXPECT_EQ(Builtin(0.01).Classify("happy but sad").tone, Tone::kNeutral);
  EXPECT_EQ(Builtin(0.01).Classify("happy happy sad").tone, Tone::kHappy);
}

TEST(LexiconToneTest, CaseInsensitive) {
  EXPECT_EQ(Builtin().Classify("FURIOUS!").tone, Tone::kAngry);
  EXPECT_EQ(Builtin().Classify("Wow.").tone, Tone::kSurprise);
}

TEST(PickLabelTest, Examples) {
  double a[] = {0.1, 0.5, 0.4};
  EXPECT_EQ(PickLabel(a, 3, 0.0), 1u);
  EXPECT_EQ(PickLabel(a, 3, 0.09), 1u);
  EXPECT_EQ(PickLabel(a, 3, 0.11), 2u);
  double tie[] = {0.4, 0.4, 0.2};
  EXPECT_EQ(PickLabel(tie, 3, 0.0), 0u);
}

// Random bags of lexicon words: scores form a distribution and the label is
// the category with the most hits (earliest on ties).
TEST(LexiconTonePropertyTest, ScoresFollowCounts) {
  ToneLexicon lex = LoadToneLexicon(DefaultToneLexiconPath());
  LexiconToneClassifier classifier(lex);
  Rng rng(17);
  for (int trial = 0; trial < 300; ++trial) {
    std::array<int, kNumTones> counts{};
    std::string text;
    size_t words = rng.Uniform(6);
    for (size_t w = 0; w < words; ++w) {
      size_t label = rng.Uniform(kNumTones - 1);
      const auto& list = lex.tone_words[label];
      std::string word = list[rng.Uniform(list.size())];
      // Only count words that belong to a single tone list.
      int owners = 0;
      for (size_t k = 0; k + 1 < kNumTones; ++k) {
        owners += std::count(lex.tone_words[k].begin(), lex.tone_words[k].end(),
                             word) > 0;
      }
      if (owners != 1) continue;
      ++counts[label];
      text += word + " filler ";
    }
    ToneReport r = classifier.Classify(text);
    ASSERT_NEAR(Sum(r.tone_scores), 1.0, 1e-12);
    int best = 0;
    for (size_t k = 1; k + 1 < kNumTones; ++k) {
      if (counts[k] > counts[best]) best = static_cast<int>(k);
    }
    Tone expected = counts[best] == 0 ? Tone::kNeutral : static_cast<Tone>(best);
    ASSERT_EQ(r.tone, expected) << text;
  }
}

TEST(LexiconParseTest, Errors) {
  EXPECT_THROW(ParseToneLexicon("{}"), ConfigError);
  EXPECT_THROW(ParseToneLexicon("nope"), ConfigError);
}

TEST(RemoteToneTest, ParsesScores) {
  StubJsonServer stub([](const Json& req) {
    EXPECT_EQ(req["text"], "hello");
    Json reply = {{"tone_scores", {{"happy", 1}, {"surprised", 3}}},
                  {"sentiment_scores", {{"positive", 2}, {"negative", 2}}}};
    return std::make_pair(200, reply.dump());
  });
  RemoteToneClassifier remote(stub.url("/tone"), 0.0, nullptr);
  ToneReport r = remote.Classify("hello");
  EXPECT_EQ(r.tone, Tone::kSurprise);
  EXPECT_DOUBLE_EQ(r.tone_scores[4], 0.75);
  EXPECT_EQ(r.sentiment, Sentiment::kPositive);
  EXPECT_EQ(stub.requests(), 1u);
}

TEST(RemoteToneTest, FallbackOnFailure) {
  StubJsonServer stub([](const Json&) {
    return std::make_pair(500, std::string("{}"));
  });
  RemoteToneClassifier bare(stub.url("/tone"), 0.0, nullptr);
  EXPECT_THROW(bare.Classify("I am thrilled"), AdapterError);
  RemoteToneClassifier backed(
      stub.url("/tone"), 0.0,
      std::make_unique<LexiconToneClassifier>(Builtin()));
  EXPECT_EQ(backed.Classify("I am thrilled").tone, Tone::kHappy);
}

TEST(RemoteToneTest, MalformedBody) {
  EXPECT_THROW(RemoteToneClassifier::ParseReport("{\"tone\": 1}", 0.0),
               AdapterError);
  EXPECT_THROW(RemoteToneClassifier::ParseReport("garbage", 0.0), AdapterError);
}

}  // namespace
}  // namespace fairmt
