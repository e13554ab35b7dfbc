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

#include "fairmt/scorers.h"

#include <cmath>
#include <set>

#include "fairmt/errors.h"
#include "fairmt/model_client.h"
#include "fairmt/rng.h"
#include "fairmt/text_util.h"
#include "json.hpp"

namespace fairmt {
namespace {

using Json = nlohmann::json;

constexpr unsigned char kBos = 0x02;
constexpr unsigned char kEos = 0x03;

uint32_t Pack(unsigned char a, unsigned char b, unsigned char c = 0) {
  return (uint32_t{a} << 16) | (uint32_t{b} << 8) | c;
}

std::string Padded(std::string_view text) {
  std::string s;
  s.push_back(static_cast<char>(kBos));
  s.push_back(static_cast<char>(kBos));
  s += AsciiLower(text);
  s.push_back(static_cast<char>(kEos));
  return s;
}

void NormalizeL2(Vector& v) {
  double norm = 0;
  for (double x : v) norm += x * x;
  norm = std::sqrt(norm);
  if (norm == 0) throw AdapterError("embedding has zero norm");
  for (double& x : v) x /= norm;
}

}  // namespace

double Cosine(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) {
    throw ValidationError("embedding dimensions differ: " +
                          std::to_string(a.size()) + " vs " +
                          std::to_string(b.size()));
  }
  double dot = 0, na = 0, nb = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0 || nb == 0) return 0;
  return dot / std::sqrt(na * nb);
}

Vector HashedTrigramEmbedder::Embed(std::string_view text) {
  std::string s = "  " + AsciiLower(text) + "  ";
  Vector v(dim_, 0.0);
  for (size_t i = 0; i + 3 <= s.size(); ++i) {
    v[Fnv1a64(std::string_view(s).substr(i, 3)) % dim_] += 1.0;
  }
  NormalizeL2(v);
  return v;
}

Vector RemoteEmbedder::Embed(std::string_view text) {
  Json req;
  req["text"] = text;
  HttpResult http = HttpPostJson(url_, req.dump(), {}, timeout_seconds_);
  if (http.status != 200) {
    throw AdapterError("embedding endpoint " + url_ + " failed: " +
                       (http.error.empty() ? "HTTP " + std::to_string(http.status)
                                           : http.error));
  }
  try {
    Vector v = Json::parse(http.body).at("vector").get<Vector>();
    if (v.empty()) throw AdapterError("empty embedding from " + url_);
    NormalizeL2(v);
    return v;
  } catch (const Json::exception& e) {
    throw AdapterError(std::string("malformed embedding response: ") +
                       e.what());
  }
}

TrigramPerplexity::TrigramPerplexity(const std::vector<std::string>& training) {
  std::set<unsigned char> alphabet = {kEos};
  for (const std::string& line : training) {
    std::string s = Padded(line);
    for (size_t i = 2; i < s.size(); ++i) {
      auto a = static_cast<unsigned char>(s[i - 2]);
      auto b = static_cast<unsigned char>(s[i - 1]);
      auto c = static_cast<unsigned char>(s[i]);
      alphabet.insert(c);
      ++bigram_[Pack(a, b)];
      ++trigram_[Pack(a, b, c)];
    }
  }
  // One extra symbol stands for every character never seen in training.
  vocab_ = static_cast<double>(alphabet.size() + 1);
}

double TrigramPerplexity::Perplexity(std::string_view text) {
  if (text.empty()) throw ValidationError("perplexity of empty text");
  std::string s = Padded(text);
  double nll = 0;
  size_t n = 0;
  for (size_t i = 2; i < s.size(); ++i) {
    auto a = static_cast<unsigned char>(s[i - 2]);
    auto b = static_cast<unsigned char>(s[i - 1]);
    auto c = static_cast<unsigned char>(s[i]);
    auto bi = bigram_.find(Pack(a, b));
    auto tri = trigram_.find(Pack(a, b, c));
    double num = 1.0 + (tri == trigram_.end() ? 0.0 : tri->second);
    double den = vocab_ + (bi == bigram_.end() ? 0.0 : bi->second);
    nll -= std::log(num / den);
    ++n;
  }
  return std::exp(nll / static_cast<double>(n));
}

double RemotePerplexity::Perplexity(std::string_view text) {
  if (text.empty()) throw ValidationError("perplexity of empty text");
  Json req;
  req["text"] = text;
  HttpResult http = HttpPostJson(url_, req.dump(), {}, timeout_seconds_);
  if (http.status != 200) {
    throw AdapterError("perplexity endpoint " + url_ + " failed: " +
                       (http.error.empty() ? "HTTP " + std::to_string(http.status)
                                           : http.error));
  }
  try {
    double p = Json::parse(http.body).at("perplexity").get<double>();
    if (!(p > 0) || !std::isfinite(p)) {
      throw AdapterError("perplexity endpoint returned " + std::to_string(p));
    }
    return p;
  } catch (const Json::exception& e) {
    throw AdapterError(std::string("malformed perplexity response: ") +
                       e.what());
  }
}

std::vector<std::string> PerplexityTrainingText(
    const std::vector<Template>& templates, const Catalog& catalog,
    size_t per_template) {
  std::vector<std::string> out;
  for (const Template& t : templates) {
    out.push_back(AttributeFreeText(t, catalog));
    uint64_t product = ProductSize(t, catalog);
    Rng rng(DeriveSeed(0, "perplexity-training|" + t.id));
    for (uint64_t index :
         rng.SampleIndices(product, std::min<uint64_t>(product, per_template))) {
      Sentence s = Instantiate(t, catalog, DecodeIndex(t, catalog, index));
      out.push_back(Render(catalog, s));
    }
  }
  for (const AttributeCategory& cat : catalog.categories()) {
    for (const AttributeValue& v : cat.values) {
      for (const std::string& f : v.surface_forms) out.push_back(f);
    }
  }
  return out;
}

}  // namespace fairmt
