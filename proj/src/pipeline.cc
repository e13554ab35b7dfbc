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


#include "fairmt/pipeline.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <thread>

#include "fairmt/baselines.h"
#include "fairmt/bias_analyzer.h"
#include "fairmt/errors.h"
#include "fairmt/genfair.h"
#include "fairmt/mr_engine.h"
#include "fairmt/replay_cache.h"
#include "fairmt/scorers.h"
#include "fairmt/templates.h"
#include "fairmt/text_util.h"
#include "fairmt/tone.h"
#include "json.hpp"

namespace fairmt {
namespace {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

fs::path OrDefault(const fs::path& p, const fs::path& fallback) {
  return p.empty() ? fallback : p;
}

fs::path CatalogPath(const RunConfig& c) {
  return OrDefault(c.catalog_path, DefaultCatalogPath());
}
fs::path TemplatesPath(const RunConfig& c) {
  return OrDefault(c.templates_path, DefaultTemplatesPath());
}
fs::path GrammarPath(const RunConfig& c) {
  return OrDefault(c.grammar_path, DefaultAstraeaPath());
}
fs::path GenConfigPath(const RunConfig& c) {
  return OrDefault(c.gen_config_path, DefaultGenConfigPath());
}

uint64_t SeedOf(const RunConfig& c) { return c.seed.value_or(kDefaultSeed); }

void RequireFile(const fs::path& path, std::string_view produced_by) {
  if (!fs::exists(path)) {
    throw UpstreamMissingError("missing " + path.string() + " (run `" +
                               std::string(produced_by) + "` first)");
  }
}

// Names an input by basename only, so manifests do not depend on where the
// output directory lives.
InputRef Ref(const fs::path& path) {
  return InputRef{path.filename().string(), Sha256Hex(ReadFile(path))};
}

Json RefsJson(const std::vector<InputRef>& refs) {
  Json a = Json::array();
  for (const InputRef& r : refs) a.push_back({{"name", r.name}, {"sha256", r.sha256}});
  return a;
}

std::string MrListString(const std::vector<MrId>& mrs) {
  std::string s;
  for (MrId mr : mrs) {
    if (!s.empty()) s += ",";
    s += MrName(mr);
  }
  return s;
}

void WriteManifest(const fs::path& out_dir, const std::string& name,
                   Json body, const std::vector<InputRef>& inputs,
                   const std::vector<fs::path>& outputs) {
  Json m;
  m["stage"] = name;
  m["tool_version"] = kToolVersion;
  m["config"] = std::move(body);
  m["inputs"] = RefsJson(inputs);
  std::vector<InputRef> outs;
  for (const fs::path& p : outputs) outs.push_back(Ref(p));
  m["outputs"] = RefsJson(outs);
  WriteFileAtomic(out_dir / ("manifest_" + name + ".json"), m.dump(2) + "\n");
}

fs::path ManifestPath(const fs::path& out_dir, const std::string& name) {
  return out_dir / ("manifest_" + name + ".json");
}

std::string GenerateStageName(GeneratorKind g) {
  return "generate_" + std::string(GeneratorName(g));
}

// Keeps the cache alive alongside the client that writes to it.
class OwningCacheClient : public ModelClient {
 public:
  OwningCacheClient(const fs::path& path, ReplayMode mode,
                    std::string endpoint_key,
                    std::unique_ptr<ModelClient> inner)
      : cache_(std::make_unique<ReplayCache>(path)),
        client_(*cache_, mode, std::move(endpoint_key), std::move(inner)) {}

  ModelResponse Query(const TestCase& c) override { return client_.Query(c); }
  std::string EndpointKey() const override { return client_.EndpointKey(); }

 private:
  std::unique_ptr<ReplayCache> cache_;
  CachingModelClient client_;
};

Json ResponseJson(const StoredResponse& r) {
  Json j;
  j["record"] = "response";
  j["case_id"] = r.case_id;
  j["model"] = r.model;
  j["status"] = r.status;
  j["text"] = r.text;
  if (!r.error.empty()) j["error"] = r.error;
  return j;
}

StoredResponse ResponseFromJson(const Json& j) {
  StoredResponse r;
  r.case_id = j.at("case_id").get<std::string>();
  r.model = j.value("model", "");
  r.status = j.value("status", 200);
  r.text = j.value("text", "");
  r.error = j.value("error", "");
  return r;
}

Json ResponseHeader(const std::string& endpoint,
                    const std::string& pairs_sha) {
  Json h;
  h["record"] = "header";
  h["schema_version"] = kSchemaVersion;
  h["kind"] = "responses";
  h["endpoint"] = endpoint;
  h["pairs_sha256"] = pairs_sha;
  return h;
}

// Reads a partial response file: header, then responses in completion
// order. Later lines for a case replace earlier ones.
std::map<std::string, StoredResponse> LoadPartial(const fs::path& path,
                                                  const Json& expected) {
  std::map<std::string, StoredResponse> out;
  std::ifstream in(path);
  std::string line;
  bool header = true;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (Trim(line).empty()) continue;
    Json j;
    try {
      j = Json::parse(line);
    } catch (const Json::exception&) {
      // A crash can leave a torn last line; everything before it is usable.
      break;
    }
    if (header) {
      if (j.value("endpoint", "") != expected["endpoint"] ||
          j.value("pairs_sha256", "") != expected["pairs_sha256"]) {
        throw ConfigError(path.string() +
                          " belongs to a different endpoint or pairs file; "
                          "delete it to start over");
      }
      header = false;
      continue;
    }
    try {
      StoredResponse r = ResponseFromJson(j);
      out[r.case_id] = std::move(r);
    } catch (const Json::exception& e) {
      throw ConfigError(path.string() + ", line " + std::to_string(lineno) +
                        ": " + e.what());
    }
  }
  return out;
}

std::unique_ptr<Embedder> MakeEmbedder(const RunConfig& c) {
  if (c.embed_url.empty()) return std::make_unique<HashedTrigramEmbedder>();
  return std::make_unique<RemoteEmbedder>(c.embed_url);
}

std::unique_ptr<PerplexityScorer> MakeScorer(const RunConfig& c,
                                             const Catalog& catalog) {
  if (!c.perplexity_url.empty()) {
    return std::make_unique<RemotePerplexity>(c.perplexity_url);
  }
  return std::make_unique<TrigramPerplexity>(
      PerplexityTrainingText(LoadTemplates(TemplatesPath(c)), catalog));
}

std::vector<MetricsReport> ComputeAndWriteMetrics(const RunConfig& config,
                                                  std::ostream& log) {
  const fs::path& dir = config.out_dir;
  Catalog catalog = LoadCatalog(CatalogPath(config));
  std::vector<std::pair<GeneratorKind, Corpus>> corpora;
  std::vector<InputRef> inputs;
  for (GeneratorKind g : config.methods) {
    fs::path p = dir / CasesFile(g);
    if (!fs::exists(p)) continue;
    std::vector<std::string> warnings;
    Corpus corpus = ReadCorpus(p, &warnings);
    for (const auto& w : warnings) log << "warning: " << w << "\n";
    if (corpus.header.catalog_hash != catalog.Hash()) {
      log << "warning: " << p.filename().string()
          << " was generated with a different catalog\n";
    }
    inputs.push_back(Ref(p));
    corpora.emplace_back(g, std::move(corpus));
  }
  if (corpora.empty()) {
    throw UpstreamMissingError("no case corpora in " + dir.string() +
                               " (run `generate` first)");
  }
  auto embedder = MakeEmbedder(config);
  auto scorer = MakeScorer(config, catalog);
  std::vector<MetricsReport> reports;
  for (const auto& [g, corpus] : corpora) {
    log << "metrics: " << GeneratorName(g) << " (" << corpus.cases.size()
        << " cases)\n";
    reports.push_back(ComputeMetrics(corpus, catalog, *embedder, *scorer,
                                     config.sample_n, SeedOf(config)));
  }
  WriteFileAtomic(dir / kMetricsCsvFile, MetricsCsv(reports));
  WriteFileAtomic(dir / kMetricsTableFile, MetricsTable(reports));
  Json body;
  body["seed"] = SeedOf(config);
  body["sample_n"] = config.sample_n;
  body["metric_version"] = kMetricVersion;
  body["embedder"] = embedder->Name();
  body["scorer"] = scorer->Name();
  WriteManifest(dir, "metrics", std::move(body), inputs,
                {dir / kMetricsCsvFile, dir / kMetricsTableFile});
  return reports;
}

}  // namespace

std::string CasesFile(GeneratorKind g) {
  return "cases_" + std::string(GeneratorName(g)) + ".jsonl";
}

std::string SerializeResponses(const ResponseFile& file) {
  std::string out = ResponseHeader(file.endpoint, file.pairs_sha256).dump();
  out.push_back('\n');
  for (const StoredResponse& r : file.responses) {
    out += ResponseJson(r).dump();
    out.push_back('\n');
  }
  return out;
}

ResponseFile ParseResponses(std::string_view text) {
  ResponseFile file;
  bool header = true;
  int lineno = 0;
  for (const std::string& line : SplitOn(text, '\n')) {
    ++lineno;
    if (Trim(line).empty()) continue;
    try {
      Json j = Json::parse(line);
      if (header) {
        if (j.value("record", "") != "header" ||
            j.value("kind", "") != "responses") {
          throw ConfigError("expected a responses header");
        }
        if (j.value("schema_version", 0) != kSchemaVersion) {
          throw ConfigError("unsupported schema_version");
        }
        file.endpoint = j.value("endpoint", "");
        file.pairs_sha256 = j.value("pairs_sha256", "");
        header = false;
        continue;
      }
      file.responses.push_back(ResponseFromJson(j));
    } catch (const Json::exception& e) {
      throw ConfigError("responses, line " + std::to_string(lineno) + ": " +
                        e.what());
    } catch (const ConfigError& e) {
      throw ConfigError("responses, line " + std::to_string(lineno) + ": " +
                        e.what());
    }
  }
  if (header) throw ConfigError("responses file has no header");
  return file;
}

std::unique_ptr<ModelClient> MakeModelClient(const RunConfig& config) {
  std::unique_ptr<ModelClient> inner;
  if (config.mock && config.endpoint) {
    throw ConfigError("choose either --mock or --endpoint, not both");
  }
  if (config.mock) {
    inner = std::make_unique<MockModelClient>(LoadMockRules(
        OrDefault(config.mock_rules_path, DefaultMockRulesPath())));
  } else if (config.endpoint) {
    inner = std::make_unique<RemoteModelClient>(*config.endpoint);
  }
  if (!config.replay_cache.empty() && !config.record_cache.empty()) {
    throw ConfigError("--replay and --record are mutually exclusive");
  }
  if (inner == nullptr) {
    throw ConfigError(
        "no model: pass --mock or --endpoint (with --replay, they only "
        "name the cache entries to use)");
  }
  if (!config.replay_cache.empty()) {
    std::string key = inner->EndpointKey();
    return std::make_unique<OwningCacheClient>(
        config.replay_cache, ReplayMode::kReplay, key, std::move(inner));
  }
  if (!config.record_cache.empty()) {
    std::string key = inner->EndpointKey();
    return std::make_unique<OwningCacheClient>(
        config.record_cache, ReplayMode::kRecord, key, std::move(inner));
  }
  return inner;
}

void CmdGenerate(const RunConfig& config, std::ostream& log) {
  const fs::path& dir = config.out_dir;
  fs::create_directories(dir);
  const fs::path catalog_path = CatalogPath(config);
  Catalog catalog = LoadCatalog(catalog_path);

  for (GeneratorKind g : config.methods) {
    Corpus corpus;
    std::vector<InputRef> inputs = {Ref(catalog_path)};
    Json body;
    body["method"] = GeneratorName(g);
    switch (g) {
      case GeneratorKind::kGenFair: {
        const fs::path tpath = TemplatesPath(config);
        const fs::path cpath = GenConfigPath(config);
        GenConfig gen = LoadGenConfig(cpath);
        if (config.seed) gen.seed = *config.seed;
        if (config.max_cases) gen.max_cases = *config.max_cases;
        GenResult result = GenerateGenFair(LoadTemplates(tpath), catalog, gen);
        for (const auto& line : result.log) log << "genfair: " << line << "\n";
        log << "genfair: " << result.corpus.cases.size() << " cases (base "
            << result.stats.base << ", ep " << result.stats.ep
            << ", mutation " << result.stats.mutation << ", bva "
            << result.stats.bva << ", duplicates dropped "
            << result.stats.duplicates << ")\n";
        corpus = std::move(result.corpus);
        if (config.n) corpus = TakeFirst(corpus, *config.n);
        inputs.push_back(Ref(tpath));
        inputs.push_back(Ref(cpath));
        body["seed"] = gen.seed;
        body["generator_config"] = Json::parse(SerializeGenConfig(gen));
        body["stats"] = {{"base", result.stats.base},
                         {"ep", result.stats.ep},
                         {"mutation", result.stats.mutation},
                         {"bva", result.stats.bva},
                         {"duplicates", result.stats.duplicates},
                         {"skipped", result.stats.skipped}};
        break;
      }
      case GeneratorKind::kTemplate: {
        const fs::path tpath = TemplatesPath(config);
        std::vector<std::string> warnings;
        corpus = GenerateTemplateBaseline(
            LoadTemplates(tpath), catalog,
            config.n.value_or(kDefaultBaselineCases), SeedOf(config),
            &warnings);
        for (const auto& w : warnings) log << "warning: " << w << "\n";
        inputs.push_back(Ref(tpath));
        body["seed"] = SeedOf(config);
        break;
      }
      case GeneratorKind::kAstraea: {
        const fs::path gpath = GrammarPath(config);
        corpus = GenerateAstraea(LoadAstraeaSpec(gpath, catalog), catalog,
                                 config.n.value_or(kDefaultBaselineCases),
                                 SeedOf(config));
        inputs.push_back(Ref(gpath));
        body["seed"] = SeedOf(config);
        break;
      }
    }
    body["n"] = config.n ? Json(*config.n) : Json(nullptr);
    body["cases"] = corpus.cases.size();
    corpus.header.inputs = inputs;
    const fs::path out = dir / CasesFile(g);
    WriteCorpus(corpus, out);
    WriteManifest(dir, GenerateStageName(g), std::move(body), inputs, {out});
    log << "wrote " << out.string() << " (" << corpus.cases.size()
        << " cases)\n";
  }
}

void CmdPair(const RunConfig& config, std::ostream& log) {
  const fs::path& dir = config.out_dir;
  const fs::path catalog_path = CatalogPath(config);
  Catalog catalog = LoadCatalog(catalog_path);
  const uint64_t seed = SeedOf(config);

  std::vector<InputRef> inputs = {Ref(catalog_path)};
  std::vector<GeneratorKind> used;
  PairCorpus all;
  for (GeneratorKind g : config.methods) {
    const fs::path p = dir / CasesFile(g);
    if (!fs::exists(p)) {
      log << "pair: no " << p.filename().string() << ", skipping\n";
      continue;
    }
    std::vector<std::string> warnings;
    Corpus corpus = ReadCorpus(p, &warnings);
    for (const auto& w : warnings) log << "warning: " << w << "\n";
    if (corpus.header.catalog_hash != catalog.Hash()) {
      throw ConfigError(p.string() +
                        " was generated with a different catalog");
    }
    if (config.take_first) corpus = TakeFirst(corpus, *config.take_first);
    std::vector<PairSkip> skips;
    PairCorpus pairs =
        GeneratePairs(corpus, config.mrs, catalog, seed, &skips);
    std::map<std::string, int> skip_counts;
    for (const PairSkip& s : skips) {
      ++skip_counts[std::string(MrName(s.mr)) + ": " + s.reason];
    }
    log << "pair: " << GeneratorName(g) << " " << corpus.cases.size()
        << " cases -> " << pairs.pairs.size() << " pairs\n";
    for (const auto& [why, n] : skip_counts) {
      log << "pair:   not applicable " << n << "x (" << why << ")\n";
    }
    inputs.push_back(Ref(p));
    const fs::path manifest = ManifestPath(dir, GenerateStageName(g));
    if (fs::exists(manifest)) inputs.push_back(Ref(manifest));
    used.push_back(g);
    for (TestPair& tp : pairs.pairs) all.pairs.push_back(std::move(tp));
  }
  if (used.empty()) {
    throw UpstreamMissingError("no case corpora in " + dir.string() +
                               " (run `generate` first)");
  }
  std::string settings = "mrs=" + MrListString(config.mrs);
  if (config.take_first) {
    settings += ";take_first=" + std::to_string(*config.take_first);
  }
  all.header = MakeHeader(
      "pairs",
      used.size() == 1 ? std::string(GeneratorName(used[0])) : std::string(),
      seed, catalog, settings);
  all.header.inputs = inputs;
  const fs::path out = dir / kPairsFile;
  WritePairCorpus(all, out);
  Json body;
  body["seed"] = seed;
  body["mrs"] = MrListString(config.mrs);
  body["take_first"] =
      config.take_first ? Json(*config.take_first) : Json(nullptr);
  body["pairs"] = all.pairs.size();
  WriteManifest(dir, "pair", std::move(body), inputs, {out});
  log << "wrote " << out.string() << " (" << all.pairs.size() << " pairs)\n";
}

RunSummary CmdRun(const RunConfig& config, std::ostream& log) {
  std::unique_ptr<ModelClient> client = MakeModelClient(config);
  return CmdRun(config, *client, log);
}

RunSummary CmdRun(const RunConfig& config, ModelClient& client,
                  std::ostream& log) {
  const fs::path& dir = config.out_dir;
  const fs::path pairs_path = dir / kPairsFile;
  RequireFile(pairs_path, "pair");
  const std::string pairs_sha = Sha256Hex(ReadFile(pairs_path));
  PairCorpus pairs = ReadPairCorpus(pairs_path);

  std::map<std::string, const TestCase*> unique;
  for (const TestPair& p : pairs.pairs) {
    for (const TestCase* c : {&p.source, &p.followup}) {
      auto [it, inserted] = unique.emplace(c->id, c);
      if (!inserted && it->second->text != c->text) {
        throw ValidationError("case id " + c->id +
                              " is used for two different texts");
      }
    }
  }

  const std::string endpoint = client.EndpointKey();
  const Json header = ResponseHeader(endpoint, pairs_sha);
  const fs::path partial_path = dir / kPartialFile;
  std::map<std::string, StoredResponse> recorded;
  if (fs::exists(partial_path)) {
    recorded = LoadPartial(partial_path, header);
  }

  RunSummary summary;
  summary.unique_cases = unique.size();
  std::vector<const TestCase*> todo;
  for (const auto& [id, c] : unique) {
    auto it = recorded.find(id);
    if (it != recorded.end() && it->second.ok()) {
      ++summary.already_recorded;
    } else {
      todo.push_back(c);
    }
  }
  log << "run: " << unique.size() << " distinct cases, "
      << summary.already_recorded << " already recorded, " << todo.size()
      << " to query via " << endpoint << "\n";

  if (!fs::exists(partial_path) || fs::file_size(partial_path) == 0) {
    std::ofstream(partial_path, std::ios::trunc) << header.dump() << "\n";
  }
  std::ofstream partial(partial_path, std::ios::app);
  std::ofstream run_log(dir / kRunLogFile, std::ios::app);
  if (!partial || !run_log) {
    throw ConfigError("cannot write to " + dir.string());
  }

  const size_t limit =
      config.max_queries ? std::min<size_t>(*config.max_queries, todo.size())
                         : todo.size();
  std::atomic<size_t> next{0};
  std::atomic<bool> stop{false};
  std::mutex mu;
  std::exception_ptr error;

  auto worker = [&] {
    while (!stop) {
      size_t i = next.fetch_add(1);
      if (i >= limit) return;
      const TestCase& c = *todo[i];
      StoredResponse r;
      r.case_id = c.id;
      double latency = 0;
      try {
        auto t0 = std::chrono::steady_clock::now();
        ModelResponse m = client.Query(c);
        latency = m.latency_ms > 0
                      ? m.latency_ms
                      : std::chrono::duration<double, std::milli>(
                            std::chrono::steady_clock::now() - t0)
                            .count();
        r.model = m.model_name;
        r.status = m.status;
        r.text = m.text;
        r.error = m.error;
      } catch (const AdapterError& e) {
        r.status = 0;
        r.error = e.what();
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!error) error = std::current_exception();
        stop = true;
        return;
      }
      std::lock_guard<std::mutex> lock(mu);
      partial << ResponseJson(r).dump() << "\n" << std::flush;
      Json entry;
      entry["case_id"] = r.case_id;
      entry["status"] = r.status;
      entry["latency_ms"] = latency;
      if (!r.error.empty()) entry["error"] = r.error;
      run_log << entry.dump() << "\n";
      recorded[r.case_id] = std::move(r);
    }
  };

  const size_t threads = std::max<size_t>(
      1, std::min<size_t>(static_cast<size_t>(std::max(1, config.parallelism)),
                          limit));
  std::vector<std::thread> pool;
  for (size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();
  partial.close();
  run_log.close();
  if (error) std::rethrow_exception(error);

  summary.queried = std::min(next.load(), limit);
  std::vector<StoredResponse> final_responses;
  bool all_present = true;
  for (const auto& [id, c] : unique) {
    auto it = recorded.find(id);
    if (it == recorded.end()) {
      all_present = false;
      continue;
    }
    if (!it->second.ok()) ++summary.failed;
    final_responses.push_back(it->second);
  }

  if (!all_present) {
    log << "run: stopped after " << summary.queried
        << " queries; rerun to resume from " << partial_path.string() << "\n";
    return summary;
  }
  if (summary.failed > 0 && !config.allow_failures) {
    log << "run: " << summary.failed
        << " calls failed; rerun to retry them, or pass --allow-failures to "
           "keep them as excluded pairs\n";
    return summary;
  }

  ResponseFile file{endpoint, pairs_sha, std::move(final_responses)};
  const fs::path out = dir / kResponsesFile;
  WriteFileAtomic(out, SerializeResponses(file));
  fs::remove(partial_path);
  summary.complete = true;

  Json body;
  body["endpoint"] = endpoint;
  body["responses"] = summary.unique_cases;
  body["failed"] = summary.failed;
  std::vector<InputRef> inputs = {Ref(pairs_path)};
  if (fs::exists(ManifestPath(dir, "pair"))) {
    inputs.push_back(Ref(ManifestPath(dir, "pair")));
  }
  WriteManifest(dir, "run", std::move(body), inputs, {out});
  log << "wrote " << out.string() << " (" << summary.unique_cases
      << " responses, " << summary.failed << " failed)\n";
  return summary;
}

void CmdAnalyze(const RunConfig& config, std::ostream& log) {
  const fs::path& dir = config.out_dir;
  const fs::path pairs_path = dir / kPairsFile;
  const fs::path responses_path = dir / kResponsesFile;
  RequireFile(pairs_path, "pair");
  RequireFile(responses_path, "run");
  PairCorpus pairs = ReadPairCorpus(pairs_path);
  ResponseFile responses = ParseResponses(ReadFile(responses_path));
  if (responses.pairs_sha256 != Sha256Hex(ReadFile(pairs_path))) {
    throw ConfigError(
        "responses.jsonl was recorded for a different pairs.jsonl; rerun "
        "`run`");
  }

  std::map<std::string, const StoredResponse*> by_id;
  for (const StoredResponse& r : responses.responses) by_id[r.case_id] = &r;
  std::set<std::string> missing;
  for (const TestPair& p : pairs.pairs) {
    for (const TestCase* c : {&p.source, &p.followup}) {
      if (!by_id.count(c->id)) missing.insert(c->id);
    }
  }
  if (!missing.empty()) {
    std::string list;
    size_t shown = 0;
    for (const std::string& id : missing) {
      if (shown++ == 20) {
        list += ", ...";
        break;
      }
      list += (list.empty() ? "" : ", ") + id;
    }
    throw UpstreamMissingError(std::to_string(missing.size()) +
                               " cases have no response: " + list);
  }

  ToneLexicon lexicon = LoadToneLexicon(DefaultToneLexiconPath());
  std::unique_ptr<ToneClassifier> classifier;
  if (config.tone_url.empty()) {
    classifier =
        std::make_unique<LexiconToneClassifier>(lexicon, config.tone_margin);
  } else {
    std::unique_ptr<ToneClassifier> fallback;
    if (config.tone_fallback) {
      fallback = std::make_unique<LexiconToneClassifier>(lexicon,
                                                         config.tone_margin);
    }
    classifier = std::make_unique<RemoteToneClassifier>(
        config.tone_url, config.tone_margin, std::move(fallback));
  }

  std::map<std::string, std::optional<ToneReport>> reports;
  for (const auto& [id, r] : by_id) {
    reports[id] = r->ok() ? std::optional<ToneReport>(
                                classifier->Classify(r->text))
                          : std::nullopt;
  }
  std::vector<Verdict> verdicts;
  verdicts.reserve(pairs.pairs.size());
  for (const TestPair& p : pairs.pairs) {
    verdicts.push_back(
        CheckPair(p, reports.at(p.source.id), reports.at(p.followup.id)));
  }

  WriteFileAtomic(dir / kVerdictsFile, VerdictsToJsonl(verdicts));
  WriteFileAtomic(dir / kFdrCsvFile, FdrCsv(verdicts, config.exclude_mrs));
  WriteFileAtomic(dir / kFdrByMrFile, FdrByMrCsv(verdicts));
  const std::string table = FdrTable(verdicts, config.exclude_mrs);
  WriteFileAtomic(dir / kFdrTableFile, table);
  log << table;

  Json body;
  body["classifier"] = classifier->Name();
  body["tone_margin"] = config.tone_margin;
  body["exclude_mrs"] = MrListString(config.exclude_mrs);
  std::vector<InputRef> inputs = {Ref(pairs_path), Ref(responses_path)};
  if (fs::exists(ManifestPath(dir, "run"))) {
    inputs.push_back(Ref(ManifestPath(dir, "run")));
  }
  WriteManifest(dir, "analyze", std::move(body), inputs,
                {dir / kVerdictsFile, dir / kFdrCsvFile, dir / kFdrByMrFile,
                 dir / kFdrTableFile});

  if (config.with_metrics) {
    bool any = false;
    for (GeneratorKind g : config.methods) {
      any = any || fs::exists(dir / CasesFile(g));
    }
    if (any) {
      std::vector<MetricsReport> m = ComputeAndWriteMetrics(config, log);
      log << MetricsTable(m);
    } else {
      log << "analyze: no case corpora, metrics skipped\n";
    }
  }
}

std::vector<MetricsReport> CmdMetrics(const RunConfig& config,
                                      std::ostream& log) {
  std::vector<MetricsReport> reports = ComputeAndWriteMetrics(config, log);
  log << MetricsTable(reports);
  return reports;
}

std::string CmdReport(const RunConfig& config, std::ostream& log) {
  const fs::path& dir = config.out_dir;
  const fs::path verdicts_path = dir / kVerdictsFile;
  RequireFile(verdicts_path, "analyze");
  std::vector<Verdict> verdicts = ParseVerdicts(ReadFile(verdicts_path));
  std::string report = "Fault detection\n\n";
  report += FdrTable(verdicts, config.exclude_mrs);
  const fs::path metrics_path = dir / kMetricsTableFile;
  if (fs::exists(metrics_path)) {
    report += "\nCorpus quality\n\n" + ReadFile(metrics_path);
  } else {
    log << "report: no " << kMetricsTableFile << ", metrics omitted\n";
  }
  WriteFileAtomic(dir / kReportFile, report);
  return report;
}

}  // namespace fairmt
