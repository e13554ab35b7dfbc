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

#ifndef FAIRMT_TONE_H_
#define FAIRMT_TONE_H_

#include <array>
#include <filesystem>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace fairmt {

// Declaration order doubles as the tie-break order.
enum class Tone { kHappy, kSad, kAngry, kFear, kSurprise, kNeutral };
enum class Sentiment { kPositive, kNegative, kNeutral };

inline constexpr size_t kNumTones = 6;
inline constexpr size_t kNumSentiments = 3;

std::string_view ToneName(Tone t);
Tone ParseTone(std::string_view name);
std::string_view SentimentName(Sentiment s);
Sentiment ParseSentiment(std::string_view name);

struct ToneReport {
  Tone tone = Tone::kNeutral;
  Sentiment sentiment = Sentiment::kNeutral;
  std::array<double, kNumTones> tone_scores{};
  std::array<double, kNumSentiments> sentiment_scores{};

  bool operator==(const ToneReport&) const = default;
};

class ToneClassifier {
 public:
  virtual ~ToneClassifier() = default;
  // Must be safe to call concurrently.
  virtual ToneReport Classify(std::string_view text) = 0;
  virtual std::string Name() const = 0;
};

struct ToneLexicon {
  std::array<std::vector<std::string>, kNumTones> tone_words;  // neutral empty
  std::array<std::vector<std::string>, kNumSentiments> sentiment_words;
};

ToneLexicon ParseToneLexicon(std::string_view json_text);
ToneLexicon LoadToneLexicon(const std::filesystem::path& path);
std::filesystem::path DefaultToneLexiconPath();

// Picks the winning label from normalized scores: argmax with ties going to
// the earlier label. The neutral label (last) wins when no other label
// leads the runner-up by at least `margin`.
size_t PickLabel(const double* scores, size_t n, double margin);

// Word-count scorer: score(label) is proportional to 1 + the number of the
// label's words in the casefolded text; neutral when nothing matches.
class LexiconToneClassifier : public ToneClassifier {
 public:
  explicit LexiconToneClassifier(ToneLexicon lexicon, double margin = 0.0);
  ToneReport Classify(std::string_view text) override;
  std::string Name() const override { return "builtin-lexicon"; }

 private:
  ToneLexicon lexicon_;
  double margin_;
};

// POST {"text": ...} -> {"tone_scores": {...}, "sentiment_scores": {...}}.
class RemoteToneClassifier : public ToneClassifier {
 public:
  RemoteToneClassifier(std::string url, double margin,
                       std::unique_ptr<ToneClassifier> fallback,
                       double timeout_seconds = 30);
  ToneReport Classify(std::string_view text) override;
  std::string Name() const override { return "remote:" + url_; }

  // Turns a response body into a report; throws AdapterError.
  static ToneReport ParseReport(std::string_view body, double margin);

 private:
  std::string url_;
  double margin_;
  std::unique_ptr<ToneClassifier> fallback_;
  double timeout_seconds_;
};

}  // namespace fairmt

#endif  // FAIRMT_TONE_H_
