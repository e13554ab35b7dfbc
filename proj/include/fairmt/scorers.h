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

#ifndef FAIRMT_SCORERS_H_
#define FAIRMT_SCORERS_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "fairmt/catalog.h"
#include "fairmt/templates.h"

namespace fairmt {

using Vector = std::vector<double>;

double Cosine(const Vector& a, const Vector& b);

class Embedder {
 public:
  virtual ~Embedder() = default;
  // Unit-norm vector.
  virtual Vector Embed(std::string_view text) = 0;
  virtual std::string Name() const = 0;
  virtual bool builtin() const { return false; }
};

// Hashed character-trigram counts, L2-normalized.
class HashedTrigramEmbedder : public Embedder {
 public:
  explicit HashedTrigramEmbedder(size_t dim = 512) : dim_(dim) {}
  Vector Embed(std::string_view text) override;
  std::string Name() const override { return "builtin-trigram-hash"; }
  bool builtin() const override { return true; }

 private:
  size_t dim_;
};

// POST {"text": ...} -> {"vector": [...]}.
class RemoteEmbedder : public Embedder {
 public:
  explicit RemoteEmbedder(std::string url, double timeout_seconds = 30)
      : url_(std::move(url)), timeout_seconds_(timeout_seconds) {}
  Vector Embed(std::string_view text) override;
  std::string Name() const override { return "remote:" + url_; }

 private:
  std::string url_;
  double timeout_seconds_;
};

class PerplexityScorer {
 public:
  virtual ~PerplexityScorer() = default;
  // Positive and finite; throws ValidationError for empty text.
  virtual double Perplexity(std::string_view text) = 0;
  virtual std::string Name() const = 0;
  virtual bool builtin() const { return false; }
};

// Character trigram model with add-one smoothing over lowercased text.
class TrigramPerplexity : public PerplexityScorer {
 public:
  explicit TrigramPerplexity(const std::vector<std::string>& training);
  double Perplexity(std::string_view text) override;
  std::string Name() const override { return "builtin-char-trigram"; }
  bool builtin() const override { return true; }

 private:
  std::unordered_map<uint32_t, uint32_t> bigram_;
  std::unordered_map<uint32_t, uint32_t> trigram_;
  double vocab_ = 1;
};

// POST {"text": ...} -> {"perplexity": x}.
class RemotePerplexity : public PerplexityScorer {
 public:
  explicit RemotePerplexity(std::string url, double timeout_seconds = 30)
      : url_(std::move(url)), timeout_seconds_(timeout_seconds) {}
  double Perplexity(std::string_view text) override;
  std::string Name() const override { return "remote:" + url_; }

 private:
  std::string url_;
  double timeout_seconds_;
};

// Training text for the builtin scorer: seeded instantiations of each
// template, every attribute-free template, and every catalog surface form.
std::vector<std::string> PerplexityTrainingText(
    const std::vector<Template>& templates, const Catalog& catalog,
    size_t per_template = 200);

}  // namespace fairmt

#endif  // FAIRMT_SCORERS_H_
