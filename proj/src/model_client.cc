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

#include "fairmt/model_client.h"

#include <chrono>
#include <cstdlib>
#include <thread>

#include "fairmt/errors.h"
#include "fairmt/text_util.h"
#include "httplib.h"
#include "json.hpp"

namespace fairmt {
namespace {

using Json = nlohmann::json;

bool ContainsPhrase(const std::vector<std::string>& tokens,
                    const std::vector<std::string>& phrase) {
  if (phrase.empty() || phrase.size() > tokens.size()) return false;
  for (size_t i = 0; i + phrase.size() <= tokens.size(); ++i) {
    bool match = true;
    for (size_t k = 0; k < phrase.size() && match; ++k) {
      match = tokens[i + k] == phrase[k];
    }
    if (match) return true;
  }
  return false;
}

bool Retryable(int status) {
  return status == 0 || status == 408 || status == 429 || status >= 500;
}

}  // namespace

HttpResult HttpPostJson(std::string_view url, const std::string& body,
                        const std::vector<std::pair<std::string, std::string>>&
                            headers,
                        double timeout_seconds) {
  HttpResult result;
  size_t scheme_end = url.find("://");
  if (scheme_end == std::string_view::npos) {
    result.error = "url without scheme: " + std::string(url);
    return result;
  }
  size_t path_start = url.find('/', scheme_end + 3);
  std::string origin(url.substr(0, path_start));
  std::string path =
      path_start == std::string_view::npos ? "/" : std::string(url.substr(path_start));

  httplib::Client client(origin);
  auto seconds = static_cast<time_t>(timeout_seconds);
  auto micros = static_cast<time_t>((timeout_seconds - seconds) * 1e6);
  client.set_connection_timeout(seconds, micros);
  client.set_read_timeout(seconds, micros);
  client.set_write_timeout(seconds, micros);
  httplib::Headers h;
  for (const auto& [k, v] : headers) h.emplace(k, v);
  auto res = client.Post(path, h, body, "application/json");
  if (!res) {
    result.error = httplib::to_string(res.error());
    return result;
  }
  result.status = res->status;
  result.body = res->body;
  return result;
}

std::string EndpointConfig::Key() const {
  return base_url + path + "#" + model_name;
}

RemoteModelClient::RemoteModelClient(EndpointConfig config)
    : config_(std::move(config)) {
  if (config_.base_url.empty()) throw ConfigError("endpoint without base_url");
  if (config_.deterministic) config_.temperature = 0.0;
}

std::string RemoteModelClient::RequestBody(std::string_view text) const {
  Json j;
  j["model"] = config_.model_name;
  j["messages"] = Json::array({{{"role", "user"}, {"content", text}}});
  j["temperature"] = config_.temperature;
  j["max_tokens"] = config_.max_tokens;
  if (config_.deterministic) j["top_p"] = 1;
  return j.dump();
}

std::string RemoteModelClient::ParseCompletion(std::string_view body) {
  Json j = Json::parse(body);
  return j.at("choices").at(0).at("message").at("content").get<std::string>();
}

ModelResponse RemoteModelClient::Query(const TestCase& c) {
  ModelResponse r;
  r.case_id = c.id;
  r.model_name = config_.model_name;
  std::vector<std::pair<std::string, std::string>> headers;
  if (!config_.token_env.empty()) {
    if (const char* token = std::getenv(config_.token_env.c_str())) {
      headers.emplace_back("Authorization", std::string("Bearer ") + token);
    }
  }
  const std::string body = RequestBody(c.text);
  const std::string url = config_.base_url + config_.path;
  auto start = std::chrono::steady_clock::now();
  HttpResult http;
  for (int attempt = 0; attempt <= config_.retries; ++attempt) {
    if (attempt > 0) {
      std::this_thread::sleep_for(
          std::chrono::milliseconds(config_.backoff_ms << (attempt - 1)));
    }
    http = HttpPostJson(url, body, headers, config_.timeout_seconds);
    if (!Retryable(http.status)) break;
  }
  r.latency_ms = std::chrono::duration<double, std::milli>(
                     std::chrono::steady_clock::now() - start)
                     .count();
  r.status = http.status;
  if (http.status != 200) {
    r.error = http.error.empty() ? "HTTP " + std::to_string(http.status)
                                 : http.error;
    return r;
  }
  try {
    r.text = ParseCompletion(http.body);
  } catch (const Json::exception& e) {
    r.status = 502;
    r.error = std::string("malformed completion: ") + e.what();
  }
  return r;
}

std::vector<MockRule> ParseMockRules(std::string_view json_text) {
  Json j;
  try {
    j = Json::parse(json_text);
  } catch (const Json::parse_error& e) {
    throw ConfigError("mock rules, line " +
                      std::to_string(LineOfOffset(json_text, e.byte)) + ": " +
                      e.what());
  }
  std::vector<MockRule> rules;
  try {
    for (const Json& r : j.at("rules")) {
      MockRule rule;
      rule.name = r.at("name").get<std::string>();
      rule.triggers = r.value("triggers", std::vector<std::string>{});
      rule.response = r.at("response").get<std::string>();
      rules.push_back(std::move(rule));
    }
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("mock rules: ") + e.what());
  }
  if (rules.empty() || !rules.back().triggers.empty()) {
    throw ConfigError("mock rules must end with a catch-all rule");
  }
  return rules;
}

std::vector<MockRule> LoadMockRules(const std::filesystem::path& path) {
  return ParseMockRules(ReadFile(path));
}

std::filesystem::path DefaultMockRulesPath() {
  return DataDir() / "rules" / "planted_bias.json";
}

const MockRule& MatchMockRule(const std::vector<MockRule>& rules,
                              std::string_view text) {
  std::vector<std::string> tokens = WordTokens(text);
  for (const MockRule& rule : rules) {
    bool all = true;
    for (const std::string& trigger : rule.triggers) {
      if (!ContainsPhrase(tokens, WordTokens(trigger))) {
        all = false;
        break;
      }
    }
    if (all) return rule;
  }
  return rules.back();
}

MockModelClient::MockModelClient(std::vector<MockRule> rules, std::string name)
    : rules_(std::move(rules)), name_(std::move(name)) {
  if (rules_.empty() || !rules_.back().triggers.empty()) {
    throw ConfigError("mock rules must end with a catch-all rule");
  }
}

ModelResponse MockModelClient::Query(const TestCase& c) {
  ModelResponse r;
  r.case_id = c.id;
  r.model_name = name_;
  r.text = MatchMockRule(rules_, c.text).response;
  return r;
}

}  // namespace fairmt
