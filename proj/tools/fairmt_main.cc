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


// Command-line driver: generate -> pair -> run -> analyze -> report.
//
// Exit codes: 0 success, 2 bad configuration or input, 3 an upstream file
// is missing, 4 model or adapter failure (including an unfinished run).

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fairmt/corpus.h"
#include "fairmt/errors.h"
#include "fairmt/pipeline.h"
#include "fairmt/text_util.h"

namespace {

using fairmt::RunConfig;

std::vector<fairmt::GeneratorKind> ParseMethods(const std::string& list) {
  if (list == "all") return RunConfig{}.methods;
  std::vector<fairmt::GeneratorKind> out;
  for (const std::string& name : fairmt::SplitOn(list, ',')) {
    std::string t = fairmt::Trim(name);
    if (!t.empty()) out.push_back(fairmt::ParseGenerator(t));
  }
  if (out.empty()) throw fairmt::ConfigError("--method needs at least one name");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Metamorphic fairness testing of language models"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "TOML file with option defaults");

  RunConfig config;
  uint64_t seed = 0;
  std::string out_dir = "out";
  std::string methods = "all";
  std::string mrs;
  std::string exclude_mrs;
  uint64_t n = 0, max_cases = 0, take_first = 0, max_queries = 0;
  std::string endpoint_url, endpoint_path = "/v1/chat/completions";
  std::string model_name = "default", token_env;
  int max_tokens = 150, retries = 3;
  double timeout = 30;
  bool exclude_mr7 = false;
  std::string catalog, templates, grammar, gen_config, rules, replay, record;

  auto* seed_opt =
      app.add_option("--seed", seed, "Random seed (default: 7)");
  app.add_option("--out-dir", out_dir, "Directory for all pipeline files")
      ->capture_default_str();
  app.add_option("--method", methods,
                 "Generators: all, or a comma list of genfair,template,astraea")
      ->capture_default_str();
  app.add_option("--catalog", catalog, "Attribute catalog JSON");
  app.add_option("--templates", templates, "GenFair templates (JSON Lines)");

  auto* gen = app.add_subcommand("generate", "Generate source test cases");
  auto* n_opt = gen->add_option(
      "-n", n, "Cases for template/ASTRAEA (default 7000); GenFair keeps the first n");
  auto* max_opt = gen->add_option("--max-cases", max_cases,
                                  "GenFair case budget (overrides the config)");
  gen->add_option("--gen-config", gen_config, "GenFair generator config");
  gen->add_option("--grammar", grammar, "ASTRAEA grammar and weights");

  auto* pair = app.add_subcommand("pair", "Apply metamorphic relations");
  pair->add_option("--mrs", mrs, "Relations to apply, e.g. MR1,MR5 (default all)");
  auto* take_opt = pair->add_option("--take-first", take_first,
                                    "Use only the first N cases of each corpus");

  auto* run = app.add_subcommand("run", "Query the model under test");
  run->add_flag("--mock", config.mock, "Use the offline rule-based mock model");
  run->add_option("--rules", rules, "Mock rule file");
  run->add_option("--endpoint", endpoint_url,
                  "Base URL of a chat-completions endpoint");
  run->add_option("--endpoint-path", endpoint_path)->capture_default_str();
  run->add_option("--model", model_name)->capture_default_str();
  run->add_option("--token-env", token_env,
                  "Environment variable holding the API token");
  run->add_option("--max-tokens", max_tokens)->capture_default_str();
  run->add_option("--timeout", timeout, "Seconds per request")
      ->capture_default_str();
  run->add_option("--retries", retries)->capture_default_str();
  run->add_option("--replay", replay, "Answer only from this replay cache");
  run->add_option("--record", record, "Record live answers to this cache");
  run->add_option("--parallelism", config.parallelism)->capture_default_str();
  auto* mq_opt = run->add_option("--max-queries", max_queries,
                                 "Stop after N queries (resume later)");
  run->add_flag("--allow-failures", config.allow_failures,
                "Write responses even if some calls failed");

  auto add_analysis_flags = [&](CLI::App* sub) {
    sub->add_option("--embed-url", config.embed_url,
                    "Embedding endpoint (default: builtin)");
    sub->add_option("--perplexity-url", config.perplexity_url,
                    "Perplexity endpoint (default: builtin)");
    sub->add_option("--sample-n", config.sample_n, "Pairs sampled per metric")
        ->capture_default_str();
  };
  auto* analyze = app.add_subcommand("analyze", "Verdicts, FDR and metrics");
  analyze->add_option("--tone-url", config.tone_url,
                      "Tone classifier endpoint (default: builtin lexicon)");
  analyze->add_option("--tone-margin", config.tone_margin,
                      "Minimum lead of the top tone over the runner-up")
      ->capture_default_str();
  analyze->add_flag("--tone-fallback", config.tone_fallback,
                    "Fall back to the builtin lexicon if the classifier fails");
  analyze->add_option("--exclude-mrs", exclude_mrs,
                      "Relations left out of the totals");
  analyze->add_flag("--exclude-mr7", exclude_mr7, "Same as --exclude-mrs MR7");
  analyze->add_flag("!--no-metrics", config.with_metrics,
                    "Skip corpus metrics");
  add_analysis_flags(analyze);

  auto* metrics = app.add_subcommand("metrics", "Corpus diversity and coherence");
  add_analysis_flags(metrics);

  auto* report = app.add_subcommand("report", "Summarize analysis results");
  report->add_option("--exclude-mrs", exclude_mrs);
  report->add_flag("--exclude-mr7", exclude_mr7);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*seed_opt) config.seed = seed;
    config.out_dir = out_dir;
    config.methods = ParseMethods(methods);
    config.catalog_path = catalog;
    config.templates_path = templates;
    config.grammar_path = grammar;
    config.gen_config_path = gen_config;
    config.mock_rules_path = rules;
    config.replay_cache = replay;
    config.record_cache = record;
    if (*n_opt) config.n = n;
    if (*max_opt) config.max_cases = max_cases;
    if (*take_opt) config.take_first = take_first;
    if (*mq_opt) config.max_queries = max_queries;
    if (!mrs.empty()) config.mrs = fairmt::ParseMrList(mrs);
    if (!exclude_mrs.empty()) config.exclude_mrs = fairmt::ParseMrList(exclude_mrs);
    if (exclude_mr7) config.exclude_mrs.push_back(fairmt::MrId::kMR7);
    if (!endpoint_url.empty()) {
      fairmt::EndpointConfig e;
      e.base_url = endpoint_url;
      e.path = endpoint_path;
      e.model_name = model_name;
      e.token_env = token_env;
      e.max_tokens = max_tokens;
      e.timeout_seconds = timeout;
      e.retries = retries;
      config.endpoint = e;
    }

    if (gen->parsed()) {
      fairmt::CmdGenerate(config, std::cerr);
    } else if (pair->parsed()) {
      fairmt::CmdPair(config, std::cerr);
    } else if (run->parsed()) {
      fairmt::RunSummary s = fairmt::CmdRun(config, std::cerr);
      if (!s.complete) return 4;
    } else if (analyze->parsed()) {
      fairmt::CmdAnalyze(config, std::cout);
    } else if (metrics->parsed()) {
      fairmt::CmdMetrics(config, std::cout);
    } else if (report->parsed()) {
      std::cout << fairmt::CmdReport(config, std::cerr);
    }
  } catch (const fairmt::UpstreamMissingError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const fairmt::AdapterError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const fairmt::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
