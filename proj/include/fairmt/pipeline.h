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


#ifndef FAIRMT_PIPELINE_H_
#define FAIRMT_PIPELINE_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "fairmt/corpus.h"
#include "fairmt/metrics.h"
#include "fairmt/model_client.h"

namespace fairmt {

inline constexpr uint64_t kDefaultSeed = 7;
inline constexpr uint64_t kDefaultBaselineCases = 7000;

// Every knob of a pipeline run. Stages read only the fields they need; the
// relevant subset is written to each stage's manifest.
struct RunConfig {
  // Unset means: the generator config's seed for GenFair, kDefaultSeed
  // everywhere else.
  std::optional<uint64_t> seed;
  std::vector<GeneratorKind> methods = {GeneratorKind::kGenFair,
                                        GeneratorKind::kTemplate,
                                        GeneratorKind::kAstraea};
  std::filesystem::path out_dir = "out";

  std::filesystem::path catalog_path;    // empty: shipped default
  std::filesystem::path templates_path;  // empty: shipped default
  std::filesystem::path grammar_path;    // empty: shipped default
  std::filesystem::path gen_config_path; // empty: shipped default

  // generate: template/ASTRAEA size; for GenFair, keep only the first n.
  std::optional<uint64_t> n;
  std::optional<uint64_t> max_cases;  // overrides the generator config

  // pair
  std::optional<uint64_t> take_first;
  std::vector<MrId> mrs{std::begin(kAllMrs), std::end(kAllMrs)};

  // run
  bool mock = false;
  std::filesystem::path mock_rules_path;  // empty: shipped rules
  std::optional<EndpointConfig> endpoint;
  std::filesystem::path replay_cache;  // answer only from this cache
  std::filesystem::path record_cache;  // store live answers here
  int parallelism = 4;
  std::optional<uint64_t> max_queries;
  bool allow_failures = false;

  // analyze / metrics
  std::string tone_url;
  double tone_margin = 0.0;
  bool tone_fallback = false;
  std::vector<MrId> exclude_mrs;
  std::string embed_url;
  std::string perplexity_url;
  uint64_t sample_n = kDefaultSampleN;
  bool with_metrics = true;
};

// File names inside the output directory.
std::string CasesFile(GeneratorKind g);
inline constexpr char kPairsFile[] = "pairs.jsonl";
inline constexpr char kResponsesFile[] = "responses.jsonl";
inline constexpr char kPartialFile[] = "responses.jsonl.partial";
inline constexpr char kRunLogFile[] = "run_log.jsonl";
inline constexpr char kVerdictsFile[] = "verdicts.jsonl";
inline constexpr char kFdrCsvFile[] = "fdr.csv";
inline constexpr char kFdrByMrFile[] = "fdr_by_mr.csv";
inline constexpr char kFdrTableFile[] = "fdr_table.txt";
inline constexpr char kMetricsCsvFile[] = "metrics.csv";
inline constexpr char kMetricsTableFile[] = "metrics_table.txt";
inline constexpr char kReportFile[] = "report.txt";

struct StoredResponse {
  std::string case_id;
  std::string model;
  int status = 200;
  std::string text;
  std::string error;

  bool ok() const { return status == 200; }
  bool operator==(const StoredResponse&) const = default;
};

struct ResponseFile {
  std::string endpoint;
  std::string pairs_sha256;
  std::vector<StoredResponse> responses;  // sorted by case_id
};

std::string SerializeResponses(const ResponseFile& file);
ResponseFile ParseResponses(std::string_view text);

// Builds the model client described by `config` (mock, remote, and the
// optional replay/record cache around either). The cache, when used, is
// owned by the returned client.
std::unique_ptr<ModelClient> MakeModelClient(const RunConfig& config);

struct RunSummary {
  uint64_t unique_cases = 0;
  uint64_t already_recorded = 0;
  uint64_t queried = 0;
  uint64_t failed = 0;
  bool complete = false;  // responses.jsonl was written
};

// Each command reads its inputs from config.out_dir and writes there.
// Progress and warnings go to `log`.
void CmdGenerate(const RunConfig& config, std::ostream& log);
void CmdPair(const RunConfig& config, std::ostream& log);
RunSummary CmdRun(const RunConfig& config, std::ostream& log);
// As above with an explicit client (tests, embedding applications).
RunSummary CmdRun(const RunConfig& config, ModelClient& client,
                  std::ostream& log);
void CmdAnalyze(const RunConfig& config, std::ostream& log);
std::vector<MetricsReport> CmdMetrics(const RunConfig& config,
                                      std::ostream& log);
std::string CmdReport(const RunConfig& config, std::ostream& log);

}  // namespace fairmt

#endif  // FAIRMT_PIPELINE_H_
