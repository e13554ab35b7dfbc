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

#include "fairmt/replay_cache.h"

#include <fstream>

#include "fairmt/errors.h"
#include "fairmt/text_util.h"
#include "json.hpp"

namespace fairmt {

using Json = nlohmann::ordered_json;

ReplayCache::ReplayCache(std::filesystem::path path) : path_(std::move(path)) {
  if (!std::filesystem::exists(path_)) return;
  int line_no = 0;
  for (const std::string& line : SplitOn(ReadFile(path_), '\n')) {
    ++line_no;
    if (Trim(line).empty()) continue;
    try {
      Json j = Json::parse(line);
      ModelResponse r;
      r.case_id = j.at("case_id").get<std::string>();
      r.model_name = j.value("model", "");
      r.text = j.at("text").get<std::string>();
      entries_[Key(j.at("endpoint").get<std::string>(), r.case_id,
                   j.at("text_sha256").get<std::string>())] = std::move(r);
    } catch (const Json::exception& e) {
      throw ConfigError("replay cache " + path_.string() + ", line " +
                        std::to_string(line_no) + ": " + e.what());
    }
  }
}

std::string ReplayCache::Key(const std::string& endpoint,
                             const std::string& case_id,
                             const std::string& text_hash) {
  return endpoint + '\x1f' + case_id + '\x1f' + text_hash;
}

std::optional<ModelResponse> ReplayCache::Find(const std::string& endpoint,
                                               const TestCase& c) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = entries_.find(Key(endpoint, c.id, Sha256Hex(c.text)));
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

void ReplayCache::Put(const std::string& endpoint, const TestCase& c,
                      const ModelResponse& response) {
  if (!response.ok()) return;
  const std::string hash = Sha256Hex(c.text);
  Json j;
  j["endpoint"] = endpoint;
  j["case_id"] = c.id;
  j["text_sha256"] = hash;
  j["model"] = response.model_name;
  j["text"] = response.text;
  std::lock_guard<std::mutex> lock(mu_);
  std::string key = Key(endpoint, c.id, hash);
  if (entries_.count(key) != 0) return;
  if (path_.has_parent_path()) {
    std::filesystem::create_directories(path_.parent_path());
  }
  std::ofstream out(path_, std::ios::app | std::ios::binary);
  out << j.dump() << '\n';
  if (!out) throw AdapterError("cannot append to replay cache " + path_.string());
  ModelResponse stored = response;
  stored.latency_ms = 0;
  stored.error.clear();
  entries_[key] = std::move(stored);
}

size_t ReplayCache::size() const {
  std::lock_guard<std::mutex> lock(mu_);
  return entries_.size();
}

CachingModelClient::CachingModelClient(ReplayCache& cache, ReplayMode mode,
                                       std::string endpoint_key,
                                       std::unique_ptr<ModelClient> inner)
    : cache_(cache),
      mode_(mode),
      endpoint_key_(std::move(endpoint_key)),
      inner_(mode == ReplayMode::kReplay ? nullptr : std::move(inner)) {
  if (mode_ == ReplayMode::kRecord && inner_ == nullptr) {
    throw ConfigError("record mode needs a model endpoint");
  }
}

ModelResponse CachingModelClient::Query(const TestCase& c) {
  if (auto hit = cache_.Find(endpoint_key_, c)) {
    hit->case_id = c.id;
    return *hit;
  }
  if (mode_ == ReplayMode::kReplay) {
    throw CacheMissError("replay cache has no response for case " + c.id +
                         " at " + endpoint_key_);
  }
  ModelResponse r = inner_->Query(c);
  cache_.Put(endpoint_key_, c, r);
  return r;
}

}  // namespace fairmt
