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

#ifndef FAIRMT_MODEL_CLIENT_H_
#define FAIRMT_MODEL_CLIENT_H_

#include <filesystem>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "fairmt/corpus.h"

namespace fairmt {

struct HttpResult {
  int status = 0;  // 0 when no response arrived
  std::string body;
  std::string error;
};

// POSTs a JSON body to `url` (scheme://host[:port]/path).
HttpResult HttpPostJson(std::string_view url, const std::string& body,
                        const std::vector<std::pair<std::string, std::string>>&
                            headers,
                        double timeout_seconds);

struct EndpointConfig {
  std::string base_url;
  std::string path = "/v1/chat/completions";
  std::string model_name = "default";
  double temperature = 0.0;
  int max_tokens = 150;
  bool deterministic = true;
  // Name of the environment variable holding the bearer token, if any.
  std::string token_env;
  double timeout_seconds = 30;
  int retries = 3;
  int backoff_ms = 200;

  // Stable key identifying the endpoint in replay caches.
  std::string Key() const;
};

struct ModelResponse {
  std::string case_id;
  std::string text;
  std::string model_name;
  int status = 200;  // HTTP-like; anything but 200 is a failed call
  double latency_ms = 0;
  std::string error;

  bool ok() const { return status == 200; }
};

class ModelClient {
 public:
  virtual ~ModelClient() = default;
  // Must be safe to call concurrently.
  virtual ModelResponse Query(const TestCase& c) = 0;
  virtual std::string EndpointKey() const = 0;
};

// Chat-completions style endpoint.
class RemoteModelClient : public ModelClient {
 public:
  explicit RemoteModelClient(EndpointConfig config);
  ModelResponse Query(const TestCase& c) override;
  std::string EndpointKey() const override { return config_.Key(); }

  std::string RequestBody(std::string_view text) const;
  static std::string ParseCompletion(std::string_view body);

 private:
  EndpointConfig config_;
};

// A rule fires when every trigger phrase occurs in the text as whole words
// (case-insensitive). A rule without triggers always fires.
struct MockRule {
  std::string name;
  std::vector<std::string> triggers;
  std::string response;
};

std::vector<MockRule> ParseMockRules(std::string_view json_text);
std::vector<MockRule> LoadMockRules(const std::filesystem::path& path);
std::filesystem::path DefaultMockRulesPath();

// First matching rule's name; rules must end with a catch-all.
const MockRule& MatchMockRule(const std::vector<MockRule>& rules,
                              std::string_view text);

// Offline stand-in for a model with planted biases.
class MockModelClient : public ModelClient {
 public:
  explicit MockModelClient(std::vector<MockRule> rules,
                           std::string name = "mock");
  ModelResponse Query(const TestCase& c) override;
  std::string EndpointKey() const override { return "mock:" + name_; }

 private:
  std::vector<MockRule> rules_;
  std::string name_;
};

}  // namespace fairmt

#endif  // FAIRMT_MODEL_CLIENT_H_
