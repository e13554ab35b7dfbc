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
#include <set>

#include "fairmt/errors.h"
#include "fairmt/model_client.h"
#include "fairmt/text_util.h"
#include "json.hpp"

namespace fairmt {
namespace {

using Json = nlohmann::json;

constexpr std::string_view kToneNames[kNumTones] = {
    "happy", "sad", "angry", "fear", "surprise", "neutral"};
constexpr std::string_view kSentimentNames[kNumSentiments] = {
    "positive", "negative", "neutral"};

template <size_t N>
void Normalize(std::array<double, N>& scores) {
  double sum = 0;
  for (double s : scores) sum += s;
  if (!(sum > 0)) {
    scores.fill(1.0 / N);
    return;
  }
  for (double& s : scores) s /= sum;
}

template <size_t N>
std::array<double, N> CountScores(
    const std::multiset<std::string>& tokens,
    const std::array<std::vector<std::string>, N>& words, bool* any_hit) {
  std::array<double, N> scores{};
  *any_hit = false;
  for (size_t i = 0; i < N; ++i) {
    size_t count = 0;
    for (const std::string& w : words[i]) count += tokens.count(w);
    if (count > 0) *any_hit = true;
    scores[i] = 1.0 + static_cast<double>(count);
  }
  Normalize(scores);
  return scores;
}

template <size_t N>
std::array<double, N> ScoresFromJson(const Json& j,
                                     const std::string_view (&names)[N]) {
  std::array<double, N> scores{};
  for (size_t i = 0; i < N; ++i) {
    auto it = j.find(std::string(names[i]));
    if (it == j.end() && names[i] == "surprise") it = j.find("surprised");
    if (it != j.end()) scores[i] = std::max(0.0, it->template get<double>());
  }
  Normalize(scores);
  return scores;
}

}  // namespace

std::string_view ToneName(Tone t) { return kToneNames[static_cast<int>(t)]; }

Tone ParseTone(std::string_view name) {
  for (size_t i = 0; i < kNumTones; ++i) {
    if (kToneNames[i] == name) return static_cast<Tone>(i);
  }
  if (name == "surprised") return Tone::kSurprise;
  throw ConfigError("unknown tone '" + std::string(name) + "'");
}

std::string_view SentimentName(Sentiment s) {
  return kSentimentNames[static_cast<int>(s)];
}

Sentiment ParseSentiment(std::string_view name) {
  for (size_t i = 0; i < kNumSentiments; ++i) {
    if (kSentimentNames[i] == name) return static_cast<Sentiment>(i);
  }
  throw ConfigError("unknown sentiment '" + std::string(name) + "'");
}

ToneLexicon ParseToneLexicon(std::string_view json_text) {
  ToneLexicon lex;
  try {
    Json j = Json::parse(json_text);
    for (size_t i = 0; i + 1 < kNumTones; ++i) {
      for (const auto& w : j.at("tone").at(std::string(kToneNames[i]))) {
        lex.tone_words[i].push_back(AsciiLower(w.get<std::string>()));
      }
    }
    for (size_t i = 0; i + 1 < kNumSentiments; ++i) {
      for (const auto& w :
           j.at("sentiment").at(std::string(kSentimentNames[i]))) {
        lex.sentiment_words[i].push_back(AsciiLower(w.get<std::string>()));
      }
    }
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("tone lexicon: ") + e.what());
  }
  return lex;
}

ToneLexicon LoadToneLexicon(const std::filesystem::path& path) {
  return ParseToneLexicon(ReadFile(path));
}

std::filesystem::path DefaultToneLexiconPath() {
  return DataDir() / "lexicon" / "tone.json";
}

size_t PickLabel(const double* scores, size_t n, double margin) {
  size_t best = 0;
  for (size_t i = 1; i < n; ++i) {
    if (scores[i] > scores[best]) best = i;
  }
  if (margin > 0) {
    double runner = 0;
    for (size_t i = 0; i < n; ++i) {
      if (i != best) runner = std::max(runner, scores[i]);
    }
    if (scores[best] - runner < margin) return n - 1;
  }
  return best;
}

LexiconToneClassifier::LexiconToneClassifier(ToneLexicon lexicon,
                                             double margin)
    : lexicon_(std::move(lexicon)), margin_(margin) {}

ToneReport LexiconToneClassifier::Classify(std::string_view text) {
  std::vector<std::string> words = WordTokens(text);
  std::multiset<std::string> tokens(words.begin(), words.end());
  ToneReport r;
  bool hit = false;
  r.tone_scores = CountScores(tokens, lexicon_.tone_words, &hit);
  r.tone = hit ? static_cast<Tone>(
                     PickLabel(r.tone_scores.data(), kNumTones, margin_))
               : Tone::kNeutral;
  r.sentiment_scores = CountScores(tokens, lexicon_.sentiment_words, &hit);
  r.sentiment = hit ? static_cast<Sentiment>(PickLabel(
                          r.sentiment_scores.data(), kNumSentiments, margin_))
                    : Sentiment::kNeutral;
  return r;
}

RemoteToneClassifier::RemoteToneClassifier(
    std::string url, double margin, std::unique_ptr<ToneClassifier> fallback,
    double timeout_seconds)
    : url_(std::move(url)),
      margin_(margin),
      fallback_(std::move(fallback)),
      timeout_seconds_(timeout_seconds) {}

ToneReport RemoteToneClassifier::ParseReport(std::string_view body,
                                             double margin) {
  try {
    Json j = Json::parse(body);
    ToneReport r;
    r.tone_scores = ScoresFromJson(j.at("tone_scores"), kToneNames);
    r.sentiment_scores =
        ScoresFromJson(j.at("sentiment_scores"), kSentimentNames);
    r.tone = static_cast<Tone>(
        PickLabel(r.tone_scores.data(), kNumTones, margin));
    r.sentiment = static_cast<Sentiment>(
        PickLabel(r.sentiment_scores.data(), kNumSentiments, margin));
    return r;
  } catch (const Json::exception& e) {
    throw AdapterError(std::string("malformed tone response: ") + e.what());
  }
}

ToneReport RemoteToneClassifier::Classify(std::string_view text) {
  Json req;
  req["text"] = text;
  HttpResult http = HttpPostJson(url_, req.dump(), {}, timeout_seconds_);
  try {
    if (http.status != 200) {
      throw AdapterError("tone classifier at " + url_ + " failed: " +
                         (http.error.empty() ? "HTTP " + std::to_string(http.status)
                                             : http.error));
    }
    return ParseReport(http.body, margin_);
  } catch (const AdapterError&) {
    if (fallback_) return fallback_->Classify(text);
    throw;
  }
}

}  // namespace fairmt
