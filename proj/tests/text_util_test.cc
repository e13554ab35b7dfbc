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


#include "fairmt/text_util.h"

#include <filesystem>
#include <string>
#include <vector>

#include "gtest/gtest.h"

namespace fairmt {
namespace {

using ::testing::TestWithParam;

TEST(NormalizeTextTest, CasefoldsAndCollapsesWhitespace) {
  EXPECT_EQ(NormalizeText("  A  young\tNurse \n"), "a young nurse");
  EXPECT_EQ(NormalizeText("a young nurse"), NormalizeText("A  young  nurse"));
  EXPECT_EQ(NormalizeText(""), "");
}

TEST(NormalizeTextTest, Idempotent) {
  for (const char* s : {"X  y", " Hello, World. ", "already normal"}) {
    EXPECT_EQ(NormalizeText(NormalizeText(s)), NormalizeText(s));
  }
}

TEST(WordTokensTest, SplitsOnPunctuationAndLowercases) {
  std::vector<std::string> want = {"a", "talented", "elderly", "chef"};
  EXPECT_EQ(WordTokens("A talented, elderly chef."), want);
}

TEST(WordTokensTest, KeepsHyphenatedAndApostropheWords) {
  std::vector<std::string> want = {"middle-aged", "doesn't", "non-white"};
  EXPECT_EQ(WordTokens("Middle-aged doesn't non-White"), want);
  std::vector<std::string> dangling = {"well"};
  EXPECT_EQ(WordTokens("well- "), dangling);
}

TEST(SplitTest, SplitOnKeepsEmptyFields) {
  std::vector<std::string> want = {"a", "", "b", ""};
  EXPECT_EQ(SplitOn("a,,b,", ','), want);
  EXPECT_EQ(SplitOn("", ',').size(), 1u);
}

TEST(SplitTest, SplitWhitespaceDropsEmpty) {
  std::vector<std::string> want = {"a", "b"};
  EXPECT_EQ(SplitWhitespace("  a \t b  "), want);
  EXPECT_TRUE(SplitWhitespace("   ").empty());
}

TEST(TrimTest, Basic) {
  EXPECT_EQ(Trim("  x y \n"), "x y");
  EXPECT_EQ(Trim(""), "");
  EXPECT_EQ(Trim(" \t"), "");
}

TEST(HashTest, Sha256KnownVectors) {
  EXPECT_EQ(Sha256Hex(""),
            "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  EXPECT_EQ(Sha256Hex("abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  EXPECT_EQ(ShortHash("abc"), "ba7816bf8f01cfea");
}

TEST(HashTest, Fnv1aKnownVectors) {
  EXPECT_EQ(Fnv1a64(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(Fnv1a64("a"), 0xaf63dc4c8601ec8cULL);
}

TEST(LineOfOffsetTest, CountsNewlinesBeforeOffset) {
  EXPECT_EQ(LineOfOffset("ab\ncd\nef", 0), 1);
  EXPECT_EQ(LineOfOffset("ab\ncd\nef", 3), 2);
  EXPECT_EQ(LineOfOffset("ab\ncd\nef", 100), 3);
}

TEST(FileTest, AtomicWriteRoundTrip) {
  auto dir = std::filesystem::temp_directory_path() / "fairmt_text_util_test";
  std::filesystem::remove_all(dir);
  auto path = dir / "nested" / "file.txt";
  std::string payload("line one\n\xc3\xa9t\xc3\xa9\n", 13);
  WriteFileAtomic(path, payload);
  EXPECT_EQ(ReadFile(path), payload);
  EXPECT_FALSE(std::filesystem::exists(path.string() + ".tmp"));
  std::filesystem::remove_all(dir);
}

TEST(FileTest, MissingFileThrows) {
  EXPECT_ANY_THROW(ReadFile("/nonexistent/definitely/not/here"));
}

}  // namespace
}  // namespace fairmt
