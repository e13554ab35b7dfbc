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

#ifndef FAIRMT_REPLAY_CACHE_H_
#define FAIRMT_REPLAY_CACHE_H_

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "fairmt/model_client.h"

namespace fairmt {

// Content-addressed store of model responses, keyed by endpoint, case id and
// the SHA-256 of the case text. Backed by an append-only JSON Lines file.
class ReplayCache {
 public:
  // Loads `path` if it exists. Throws ConfigError on a malformed line.
  explicit ReplayCache(std::filesystem::path path);

  std::optional<ModelResponse> Find(const std::string& endpoint,
                                    const TestCase& c) const;
  // Appends successful responses; failed calls are never cached.
  void Put(const std::string& endpoint, const TestCase& c,
           const ModelResponse& response);

  size_t size() const;
  const std::filesystem::path& path() const { return path_; }

 private:
  static std::string Key(const std::string& endpoint,
                         const std::string& case_id,
                         const std::string& text_hash);

  std::filesystem::path path_;
  mutable std::mutex mu_;
  std::map<std::string, ModelResponse> entries_;
};

enum class ReplayMode { kRecord, kReplay };

// Serves cached responses. In replay mode there is no inner client at all,
// so a miss raises CacheMissError instead of reaching the network.
class CachingModelClient : public ModelClient {
 public:
  CachingModelClient(ReplayCache& cache, ReplayMode mode,
                     std::string endpoint_key,
                     std::unique_ptr<ModelClient> inner);

  ModelResponse Query(const TestCase& c) override;
  std::string EndpointKey() const override { return endpoint_key_; }

 private:
  ReplayCache& cache_;
  ReplayMode mode_;
  std::string endpoint_key_;
  std::unique_ptr<ModelClient> inner_;
};

}  // namespace fairmt

#endif  // FAIRMT_REPLAY_CACHE_H_
