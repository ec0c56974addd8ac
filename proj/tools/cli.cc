// Copyright 2026 The Forensa Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.h"

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "forensa/audio_io.h"
#include "forensa/dataset.h"
#include "forensa/evidence.h"
#include "forensa/features.h"
#include "forensa/harness.h"
#include "forensa/jsonl.h"
#include "forensa/llm_client.h"
#include "forensa/metrics.h"
#include "forensa/prompts.h"

namespace forensa {

namespace {

namespace fs = std::filesystem;

struct Options {
  std::uint64_t seed = 0;
  bool dry_run = false;
  int jobs = 0;  // 0: hardware concurrency

  std::string manifest, out, evidence, pairs, predictions, report, rejected;
  std::string train_pairs, eval_pairs;
  std::string audio_root;
  std::string feature_config;
  std::string backend = "openmp";
  std::string mode = "main";
  std::string scope = "tts";
  std::string split = "all";
  double p_same = 0.5;
  int pairs_per_query = 1;
  std::string pair_id;
  std::string prompt_mode = "inference";
  std::string template_path;
  std::string endpoint;
  std::string model = "forensa";
  int max_tokens = 512;
  std::optional<double> temperature;
  int max_in_flight = 8;
  std::vector<std::string> leak_patterns;
  bool genuine_positive = false;
  bool different_positive = false;
  std::string format = "text";
};

int Jobs(const Options& o) {
  if (o.jobs > 0) return o.jobs;
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

ArtifactHeader Header(std::string_view kind, const Options& o, const nlohmann::json& config) {
  return {kSchemaVersion, std::string(kind), o.seed, ConfigDigest(config)};
}

FeatureConfig LoadFeatureConfig(const Options& o) {
  FeatureConfig cfg;
  if (!o.feature_config.empty()) {
    const auto j = nlohmann::json::parse(ReadTextFile(o.feature_config), nullptr, false);
    if (j.is_discarded()) throw DataError("feature config is not JSON: " + o.feature_config);
    cfg = FeatureConfig::FromJson(j);
  }
  if (o.backend == "serial") {
    cfg.backend = kernels::Backend::kSerial;
  } else if (o.backend == "openmp") {
    cfg.backend = kernels::Backend::kOpenMP;
  } else {
    throw Error(ErrorCategory::kUsage, "unknown backend: " + o.backend);
  }
  return cfg;
}

PromptTemplate LoadTemplate(const Options& o) {
  return o.template_path.empty() ? PromptTemplate::Default()
                                 : PromptTemplate::FromFile(o.template_path);
}

std::vector<std::string> LeakPatterns(const Options& o) {
  if (!o.leak_patterns.empty()) return o.leak_patterns;
  const auto defaults = DefaultLeakPatterns();
  return {defaults.begin(), defaults.end()};
}

void ParallelFor(std::size_t n, int jobs, const std::function<void(std::size_t)>& body) {
  std::atomic<std::size_t> next{0};
  auto loop = [&] {
    for (std::size_t i = next++; i < n; i = next++) body(i);
  };
  const auto workers = std::min<std::size_t>(n, static_cast<std::size_t>(std::max(1, jobs)));
  if (workers <= 1) {
    loop();
    return;
  }
  std::vector<std::jthread> threads;
  for (std::size_t w = 0; w < workers; ++w) threads.emplace_back(loop);
}

bool DryRun(const Options& o, std::ostream& out, std::string_view command,
            const std::vector<std::string>& inputs, const std::vector<std::string>& outputs) {
  if (!o.dry_run) return false;
  out << "plan: " << command << "\n";
  for (const auto& i : inputs) {
    if (!i.empty()) out << "  read  " << i << "\n";
  }
  for (const auto& w : outputs) {
    if (!w.empty()) out << "  write " << w << "\n";
  }
  out << "  seed  " << o.seed << "\n";
  return true;
}

int CmdExtract(const Options& o, std::ostream& out, std::ostream& err) {
  if (DryRun(o, out, "extract", {o.manifest, o.audio_root}, {o.out})) return kExitOk;
  const FeatureConfig cfg = LoadFeatureConfig(o);
  const auto entries = ReadManifest(o.manifest);
  std::vector<EvidenceRecord> records(entries.size());
  std::vector<std::string> errors(entries.size());
  ParallelFor(entries.size(), Jobs(o), [&](std::size_t i) {
    const ManifestEntry& e = entries[i];
    fs::path path = e.path;
    if (path.is_relative() && !o.audio_root.empty()) path = fs::path(o.audio_root) / path;
    try {
      const AudioClip clip = Resample(LoadClip(path, e), kCanonicalSampleRate, cfg.backend);
      records[i] = {e.utt_id, ExtractEvidence(clip, cfg), clip.clipping_ratio()};
    } catch (const DataError& ex) {
      errors[i] = ex.what();
    }
  });
  int failed = 0;
  for (const auto& msg : errors) {
    if (msg.empty()) continue;
    err << "error: " << msg << "\n";
    ++failed;
  }
  if (failed > 0) {
    throw DataError(std::to_string(failed) + " of " + std::to_string(entries.size()) +
                    " clips could not be analyzed");
  }
  WriteEvidenceFile(o.out, Header(kEvidenceKind, o, cfg.ToJson()), records);
  out << "extracted " << records.size() << " evidence records -> " << o.out << "\n";
  return kExitOk;
}

int CmdRepartition(const Options& o, std::ostream& out) {
  if (DryRun(o, out, "repartition", {o.manifest}, {o.out})) return kExitOk;
  const RepartitionMode mode = ParseRepartitionMode(o.mode);
  const auto entries = Repartition(ReadManifest(o.manifest), mode);
  WriteManifest(o.out, Header(kManifestKind, o, {{"repartition", ToString(mode)}}), entries);
  std::size_t train = 0;
  for (const auto& e : entries) train += e.split == Split::kTrain;
  out << "repartitioned " << entries.size() << " entries (" << train << " train, "
      << entries.size() - train << " eval) -> " << o.out << "\n";
  return kExitOk;
}

int CmdFilter(const Options& o, std::ostream& out) {
  if (DryRun(o, out, "filter", {o.manifest, o.evidence}, {o.out, o.rejected})) return kExitOk;
  FilterCriteria criteria;
  if (o.scope == "tts") {
    criteria.scope = FilterScope::kTts;
  } else if (o.scope == "spoof") {
    criteria.scope = FilterScope::kSpoof;
  } else if (o.scope == "all") {
    criteria.scope = FilterScope::kAll;
  } else {
    throw Error(ErrorCategory::kUsage, "unknown filter scope: " + o.scope);
  }
  const auto result =
      FilterSynthetic(ReadManifest(o.manifest), ReadEvidenceFile(o.evidence), criteria);
  const nlohmann::json config = {{"filter_scope", o.scope}};
  WriteManifest(o.out, Header(kManifestKind, o, config), result.kept);
  if (!o.rejected.empty()) {
    std::vector<nlohmann::json> rows;
    for (const auto& r : result.rejected) {
      nlohmann::json row = ToJson(r.entry);
      row["reason"] = ToString(r.reason);
      rows.push_back(std::move(row));
    }
    WriteJsonl(o.rejected, Header("rejected", o, config), rows);
  }
  out << "kept " << result.kept.size() << ", rejected " << result.rejected.size() << "\n";
  return kExitOk;
}

int CmdPair(const Options& o, std::ostream& out) {
  if (DryRun(o, out, "pair", {o.manifest}, {o.out})) return kExitOk;
  PairingPolicy policy;
  policy.p_same_speaker = o.p_same;
  policy.pairs_per_query = o.pairs_per_query;
  auto pairs = BuildPairs(ReadManifest(o.manifest), policy, o.seed);
  if (o.split != "all") {
    const Split keep = ParseSplit(o.split);
    std::erase_if(pairs, [&](const AudioPair& p) { return p.split != keep; });
  }
  nlohmann::json config = policy.ToJson();
  config["split"] = o.split;
  WritePairs(o.out, Header(kPairsKind, o, config), pairs);
  out << "built " << pairs.size() << " pairs -> " << o.out << "\n";
  return kExitOk;
}

int CmdCheckDisjoint(const Options& o, std::ostream& out, std::ostream& err) {
  if (DryRun(o, out, "check-disjoint", {o.pairs, o.train_pairs, o.eval_pairs, o.manifest}, {})) {
    return kExitOk;
  }
  std::vector<AudioPair> train, eval;
  if (!o.pairs.empty()) {
    for (auto& p : ReadPairs(o.pairs)) (p.split == Split::kTrain ? train : eval).push_back(p);
  }
  if (!o.train_pairs.empty()) {
    auto t = ReadPairs(o.train_pairs);
    train.insert(train.end(), t.begin(), t.end());
  }
  if (!o.eval_pairs.empty()) {
    auto e = ReadPairs(o.eval_pairs);
    eval.insert(eval.end(), e.begin(), e.end());
  }
  if (o.pairs.empty() && (o.train_pairs.empty() || o.eval_pairs.empty())) {
    throw Error(ErrorCategory::kUsage, "give --pairs, or both --train and --eval");
  }
  std::vector<ManifestEntry> manifest;
  if (!o.manifest.empty()) manifest = ReadManifest(o.manifest);
  const DisjointReport report = CheckDisjoint(train, eval, manifest);
  if (!report.empty()) {
    err << report.ToText();
    err << "disjointness violated: " << report.shared_utts.size() << " shared utterances, "
        << report.straddling.size() << " straddling pairs\n";
    return kExitData;
  }
  out << "disjoint: " << train.size() << " train pairs, " << eval.size() << " eval pairs\n";
  return kExitOk;
}

const AudioPair& FindPair(const std::vector<AudioPair>& pairs, const std::string& id) {
  for (const auto& p : pairs) {
    if (p.pair_id == id) return p;
  }
  throw DataError("no such pair: " + id);
}

int CmdPrompt(const Options& o, std::ostream& out) {
  if (DryRun(o, out, "prompt", {o.pairs, o.evidence, o.template_path}, {o.out})) return kExitOk;
  const auto pairs = ReadPairs(o.pairs);
  const auto evidence = ReadEvidenceFile(o.evidence);
  const AudioPair& pair = FindPair(pairs, o.pair_id);
  const auto ref = evidence.find(pair.ref_utt);
  const auto query = evidence.find(pair.query_utt);
  if (ref == evidence.end() || query == evidence.end()) {
    throw DataError("missing evidence for pair " + pair.pair_id);
  }
  PromptMode mode;
  std::optional<GroundTruth> truth;
  if (o.prompt_mode == "training") {
    mode = PromptMode::kTraining;
    truth = GroundTruthOf(pair);
  } else if (o.prompt_mode == "inference") {
    mode = PromptMode::kInference;
  } else {
    throw Error(ErrorCategory::kUsage, "unknown prompt mode: " + o.prompt_mode);
  }
  const std::string text =
      LoadTemplate(o).Render(mode, ref->second.evidence, query->second.evidence, truth);
  if (o.out.empty()) {
    out << text;
  } else {
    WriteTextFile(o.out, text);
  }
  return kExitOk;
}

RetryPolicy DefaultRetry() { return RetryPolicy{}; }

int CmdGenCot(const Options& o, std::ostream& out, std::ostream& err) {
  if (DryRun(o, out, "gen-cot", {o.pairs, o.evidence, o.endpoint}, {o.out, o.rejected})) {
    return kExitOk;
  }
  if (o.endpoint.empty()) throw Error(ErrorCategory::kUsage, "--endpoint is required");
  const auto pairs = ReadPairs(o.pairs);
  const auto evidence = ReadEvidenceFile(o.evidence);
  LlmClient client(MakeTransport(o.endpoint), DefaultRetry(), o.max_in_flight);
  BatchConfig cfg;
  cfg.model = o.model;
  cfg.max_tokens = o.max_tokens;
  cfg.temperature = o.temperature.value_or(0.7);
  cfg.seed = o.seed;
  cfg.jobs = Jobs(o);
  const auto patterns = LeakPatterns(o);
  const CotBatch batch = GenerateCot(pairs, evidence, client, cfg, patterns, LoadTemplate(o));
  nlohmann::json config = cfg.ToJson();
  config["leak_patterns"] = patterns;
  std::vector<nlohmann::json> rows;
  for (const auto& r : batch.records) rows.push_back(ToJson(r));
  WriteJsonl(o.out, Header(kCotKind, o, config), rows);
  if (!o.rejected.empty()) {
    std::vector<nlohmann::json> rej;
    for (const auto& r : batch.rejected) {
      rej.push_back({{"pair_id", r.pair_id}, {"reason", r.reason}});
    }
    WriteJsonl(o.rejected, Header("cot_rejected", o, config), rej);
  }
  std::size_t flagged = 0;
  for (const auto& r : batch.records) flagged += !r.scrub_flags.empty();
  out << "cot records " << batch.records.size() << ", rejected " << batch.rejected.size()
      << ", flagged for review " << flagged << " (temperature " << cfg.temperature << ")\n";
  if (batch.transport_failures > 0) {
    err << batch.transport_failures << " requests failed in transport\n";
    return kExitTransport;
  }
  return kExitOk;
}

int CmdInfer(const Options& o, std::ostream& out, std::ostream& err) {
  if (DryRun(o, out, "infer", {o.pairs, o.evidence, o.endpoint}, {o.out})) return kExitOk;
  if (o.endpoint.empty()) throw Error(ErrorCategory::kUsage, "--endpoint is required");
  const auto pairs = ReadPairs(o.pairs);
  const auto evidence = ReadEvidenceFile(o.evidence);
  LlmClient client(MakeTransport(o.endpoint), DefaultRetry(), o.max_in_flight);
  BatchConfig cfg;
  cfg.model = o.model;
  cfg.max_tokens = o.max_tokens;
  cfg.temperature = o.temperature.value_or(0.0);
  cfg.seed = o.seed;
  cfg.jobs = Jobs(o);
  const BatchResult result = RunBatch(pairs, evidence, client, cfg, LoadTemplate(o));
  WritePredictions(o.out, Header(kPredictionsKind, o, cfg.ToJson()), result.predictions);
  std::size_t abstained = 0;
  for (const auto& p : result.predictions) abstained += IsAbstain(p.outcome);
  out << "predictions " << result.predictions.size() << ", abstained " << abstained
      << " -> " << o.out << "\n";
  if (result.transport_failures > 0) {
    err << result.transport_failures << " requests failed in transport\n";
    return kExitTransport;
  }
  return kExitOk;
}

int CmdEval(const Options& o, std::ostream& out) {
  if (DryRun(o, out, "eval", {o.pairs, o.predictions}, {o.out})) return kExitOk;
  ScoreOptions options;
  options.genuine_positive = o.genuine_positive;
  options.different_positive = o.different_positive;
  const EvalReport report = Score(ReadPredictions(o.predictions), ReadPairs(o.pairs), options);
  const std::string json = RenderReport(report, ReportFormat::kJson);
  if (!o.out.empty()) WriteTextFile(o.out, json);
  out << json << RenderReport(report, ReportFormat::kText);
  return kExitOk;
}

int CmdReport(const Options& o, std::ostream& out) {
  if (DryRun(o, out, "report", {o.report}, {o.out})) return kExitOk;
  const auto j = nlohmann::json::parse(ReadTextFile(o.report), nullptr, false);
  if (j.is_discarded()) throw DataError("report is not JSON: " + o.report);
  ReportFormat format;
  if (o.format == "text") {
    format = ReportFormat::kText;
  } else if (o.format == "json") {
    format = ReportFormat::kJson;
  } else {
    throw Error(ErrorCategory::kUsage, "unknown report format: " + o.format);
  }
  const std::string text = RenderReport(EvalReportFromJson(j), format);
  if (o.out.empty()) {
    out << text;
  } else {
    WriteTextFile(o.out, text);
  }
  return kExitOk;
}

CLI::Option* Input(CLI::App* app, const std::string& name, std::string& target,
                   const std::string& help, bool required = true) {
  auto* opt = app->add_option(name, target, help)->check(CLI::ExistingFile);
  if (required) opt->required();
  return opt;
}

}  // namespace

int RunCli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Acoustic evidence extraction, pairing, prompting and scoring for "
               "deepfake and speaker reasoning"};
  app.name("forensa");
  app.require_subcommand(1);
  app.add_option("--seed", o.seed, "Seed recorded in every artifact header");
  app.add_flag("--dry-run", o.dry_run, "Print the plan without writing");
  app.add_option("--jobs", o.jobs, "Worker threads")->envname("FORENSA_JOBS");

  auto* extract = app.add_subcommand("extract", "Compute evidence for every manifest entry");
  Input(extract, "--manifest", o.manifest, "Manifest JSONL");
  extract->add_option("--out", o.out, "Evidence JSONL")->required();
  extract->add_option("--audio-root", o.audio_root, "Base directory for relative paths");
  Input(extract, "--feature-config", o.feature_config, "Feature config JSON", false);
  extract->add_option("--backend", o.backend, "serial | openmp");

  auto* repartition = app.add_subcommand("repartition", "Assign train/eval splits");
  Input(repartition, "--manifest", o.manifest, "Manifest JSONL");
  repartition->add_option("--out", o.out, "Manifest JSONL")->required();
  repartition->add_option("--mode", o.mode, "main | train_only");

  auto* filter = app.add_subcommand("filter", "Drop low-quality synthetic utterances");
  Input(filter, "--manifest", o.manifest, "Manifest JSONL");
  Input(filter, "--evidence", o.evidence, "Evidence JSONL");
  filter->add_option("--out", o.out, "Kept manifest JSONL")->required();
  filter->add_option("--rejected", o.rejected, "Rejected entries JSONL");
  filter->add_option("--scope", o.scope, "tts | spoof | all");

  auto* pair = app.add_subcommand("pair", "Build reference/query pairs");
  Input(pair, "--manifest", o.manifest, "Split-assigned manifest JSONL");
  pair->add_option("--out", o.out, "Pairs JSONL")->required();
  pair->add_option("--p-same", o.p_same, "Same-speaker probability");
  pair->add_option("--pairs-per-query", o.pairs_per_query, "Pairs per query");
  pair->add_option("--split", o.split, "train | eval | all");

  auto* disjoint = app.add_subcommand("check-disjoint", "Verify train/eval disjointness");
  Input(disjoint, "--pairs", o.pairs, "Pairs JSONL, sides taken from each pair's split", false);
  Input(disjoint, "--train", o.train_pairs, "Train pairs JSONL", false);
  Input(disjoint, "--eval", o.eval_pairs, "Eval pairs JSONL", false);
  Input(disjoint, "--manifest", o.manifest, "Split-assigned manifest JSONL", false);

  auto* prompt = app.add_subcommand("prompt", "Render one prompt");
  Input(prompt, "--pairs", o.pairs, "Pairs JSONL");
  Input(prompt, "--evidence", o.evidence, "Evidence JSONL");
  prompt->add_option("--pair-id", o.pair_id, "Pair to render")->required();
  prompt->add_option("--mode", o.prompt_mode, "training | inference");
  Input(prompt, "--template", o.template_path, "Prompt template", false);
  prompt->add_option("--out", o.out, "Output file (stdout when absent)");

  auto* gen_cot = app.add_subcommand("gen-cot", "Generate chain-of-thought records");
  Input(gen_cot, "--pairs", o.pairs, "Pairs JSONL");
  Input(gen_cot, "--evidence", o.evidence, "Evidence JSONL");
  gen_cot->add_option("--endpoint", o.endpoint, "http://host:port or mock:<script>")
      ->envname("FORENSA_ENDPOINT");
  gen_cot->add_option("--out", o.out, "CoT JSONL")->required();
  gen_cot->add_option("--rejected", o.rejected, "Rejected pairs JSONL");
  gen_cot->add_option("--model", o.model, "Model name sent to the endpoint");
  gen_cot->add_option("--max-tokens", o.max_tokens, "Completion budget");
  gen_cot->add_option("--temperature", o.temperature, "Sampling temperature (0.7)");
  gen_cot->add_option("--max-in-flight", o.max_in_flight, "Concurrent requests");
  gen_cot->add_option("--leak-pattern", o.leak_patterns, "Scrub pattern (repeatable)");
  Input(gen_cot, "--template", o.template_path, "Prompt template", false);

  auto* infer = app.add_subcommand("infer", "Run inference prompts through an endpoint");
  Input(infer, "--pairs", o.pairs, "Pairs JSONL");
  Input(infer, "--evidence", o.evidence, "Evidence JSONL");
  infer->add_option("--endpoint", o.endpoint, "http://host:port or mock:<script>")
      ->envname("FORENSA_ENDPOINT");
  infer->add_option("--out", o.out, "Predictions JSONL")->required();
  infer->add_option("--model", o.model, "Model name sent to the endpoint");
  infer->add_option("--max-tokens", o.max_tokens, "Completion budget");
  infer->add_option("--temperature", o.temperature, "Sampling temperature (0)");
  infer->add_option("--max-in-flight", o.max_in_flight, "Concurrent requests");
  Input(infer, "--template", o.template_path, "Prompt template", false);

  auto* eval = app.add_subcommand("eval", "Score predictions");
  Input(eval, "--pairs", o.pairs, "Pairs JSONL");
  Input(eval, "--predictions", o.predictions, "Predictions JSONL");
  eval->add_option("--out", o.out, "Report JSON");
  eval->add_flag("--genuine-positive", o.genuine_positive, "Genuine is the F1 positive class");
  eval->add_flag("--different-positive", o.different_positive,
                 "Different Speakers is the F1 positive class");

  auto* report = app.add_subcommand("report", "Render a saved report");
  Input(report, "--report", o.report, "Report JSON");
  report->add_option("--format", o.format, "text | json");
  report->add_option("--out", o.out, "Output file (stdout when absent)");

  try {
    std::vector<std::string> args;
    for (int i = argc - 1; i >= 1; --i) args.emplace_back(argv[i]);
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (extract->parsed()) return CmdExtract(o, out, err);
    if (repartition->parsed()) return CmdRepartition(o, out);
    if (filter->parsed()) return CmdFilter(o, out);
    if (pair->parsed()) return CmdPair(o, out);
    if (disjoint->parsed()) return CmdCheckDisjoint(o, out, err);
    if (prompt->parsed()) return CmdPrompt(o, out);
    if (gen_cot->parsed()) return CmdGenCot(o, out, err);
    if (infer->parsed()) return CmdInfer(o, out, err);
    if (eval->parsed()) return CmdEval(o, out);
    if (report->parsed()) return CmdReport(o, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    switch (e.category()) {
      case ErrorCategory::kUsage: return kExitUsage;
      case ErrorCategory::kData: return kExitData;
      case ErrorCategory::kTransport: return kExitTransport;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}

}  // namespace forensa
