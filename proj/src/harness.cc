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

#include "forensa/harness.h"

#include <algorithm>
#include <atomic>
#include <functional>
#include <optional>
#include <thread>

namespace forensa {

namespace {

// Runs body(i) for i in [0, n) on up to `jobs` threads.
void ParallelFor(std::size_t n, int jobs, const std::function<void(std::size_t)>& body) {
  const std::size_t workers = std::min<std::size_t>(n, static_cast<std::size_t>(std::max(1, jobs)));
  std::atomic<std::size_t> next{0};
  auto loop = [&] {
    for (std::size_t i = next++; i < n; i = next++) body(i);
  };
  if (workers <= 1) {
    loop();
    return;
  }
  std::vector<std::jthread> threads;
  threads.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) threads.emplace_back(loop);
}

struct PairEvidence {
  const AcousticEvidence* ref = nullptr;
  const AcousticEvidence* query = nullptr;
  std::string missing;
};

PairEvidence Lookup(const AudioPair& p, const EvidenceIndex& evidence) {
  PairEvidence out;
  const auto r = evidence.find(p.ref_utt);
  const auto q = evidence.find(p.query_utt);
  if (r == evidence.end()) {
    out.missing = p.ref_utt;
  } else if (q == evidence.end()) {
    out.missing = p.query_utt;
  } else {
    out.ref = &r->second.evidence;
    out.query = &q->second.evidence;
  }
  return out;
}

}  // namespace

bool Prediction::SameResult(const Prediction& other) const {
  return pair_id == other.pair_id && raw_text == other.raw_text &&
         outcome == other.outcome;
}

nlohmann::json ToJson(const Prediction& p) {
  return {
      {"pair_id", p.pair_id},
      {"raw_text", p.raw_text},
      {"outcome", ToJson(p.outcome)},
      {"latency_ms", p.latency_ms},
  };
}

Prediction PredictionFromJson(const nlohmann::json& j) {
  try {
    Prediction p;
    p.pair_id = j.at("pair_id").get<std::string>();
    p.raw_text = j.at("raw_text").get<std::string>();
    p.outcome = ParseOutcomeFromJson(j.at("outcome"));
    p.latency_ms = j.at("latency_ms").get<double>();
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("bad prediction record: ") + e.what());
  }
}

std::vector<Prediction> ReadPredictions(const std::filesystem::path& path) {
  const JsonlDocument doc = ReadJsonl(path, kPredictionsKind);
  std::vector<Prediction> out;
  out.reserve(doc.rows.size());
  for (const auto& row : doc.rows) out.push_back(PredictionFromJson(row));
  return out;
}

void WritePredictions(const std::filesystem::path& path, const ArtifactHeader& header,
                      std::span<const Prediction> predictions) {
  std::vector<nlohmann::json> rows;
  rows.reserve(predictions.size());
  for (const auto& p : predictions) rows.push_back(ToJson(p));
  WriteJsonl(path, header, rows);
}

nlohmann::json BatchConfig::ToJson() const {
  return {{"model", model}, {"max_tokens", max_tokens}, {"temperature", temperature}};
}

std::string RequestId(std::uint64_t seed, const std::string& pair_id) {
  return std::to_string(seed) + ":" + pair_id;
}

BatchResult RunBatch(std::span<const AudioPair> pairs, const EvidenceIndex& evidence,
                     LlmClient& client, const BatchConfig& cfg,
                     const PromptTemplate& tmpl) {
  BatchResult result;
  result.predictions.resize(pairs.size());
  std::atomic<int> failures{0};
  ParallelFor(pairs.size(), cfg.jobs, [&](std::size_t i) {
    const AudioPair& pair = pairs[i];
    Prediction& out = result.predictions[i];
    out.pair_id = pair.pair_id;
    const PairEvidence ev = Lookup(pair, evidence);
    if (!ev.missing.empty()) {
      out.outcome = Abstain{AbstainReason::kTruncated, "missing evidence: " + ev.missing};
      return;
    }
    CompletionRequest req;
    req.model = cfg.model;
    req.prompt = tmpl.Render(PromptMode::kInference, *ev.ref, *ev.query, std::nullopt);
    req.max_tokens = cfg.max_tokens;
    req.temperature = cfg.temperature;
    req.request_id = RequestId(cfg.seed, pair.pair_id);
    try {
      const CompletionResponse resp = client.Complete(req, pair.pair_id);
      out.raw_text = resp.text;
      out.latency_ms = resp.latency_ms;
      out.outcome = ParseConclusion(resp.text);
    } catch (const TransportError& e) {
      ++failures;
      out.outcome =
          Abstain{AbstainReason::kTruncated, std::string("transport error: ") + e.what()};
    }
  });
  result.transport_failures = failures.load();
  return result;
}

CotBatch GenerateCot(std::span<const AudioPair> pairs, const EvidenceIndex& evidence,
                     LlmClient& client, const BatchConfig& cfg,
                     std::span<const std::string> leak_patterns,
                     const PromptTemplate& tmpl) {
  std::vector<std::optional<CotRecord>> records(pairs.size());
  std::vector<std::string> reasons(pairs.size());
  std::atomic<int> failures{0};
  ParallelFor(pairs.size(), cfg.jobs, [&](std::size_t i) {
    const AudioPair& pair = pairs[i];
    const PairEvidence ev = Lookup(pair, evidence);
    if (!ev.missing.empty()) {
      reasons[i] = "missing evidence: " + ev.missing;
      return;
    }
    const GroundTruth truth = GroundTruthOf(pair);
    CompletionRequest req;
    req.model = cfg.model;
    req.prompt = tmpl.Render(PromptMode::kTraining, *ev.ref, *ev.query, truth);
    req.max_tokens = cfg.max_tokens;
    req.temperature = cfg.temperature;
    req.request_id = RequestId(cfg.seed, pair.pair_id);
    try {
      const CompletionResponse resp = client.Complete(req, pair.pair_id);
      records[i] = BuildCotRecord(pair.pair_id, resp.text, truth, leak_patterns, &reasons[i]);
    } catch (const TransportError& e) {
      ++failures;
      reasons[i] = std::string("transport error: ") + e.what();
    }
  });
  CotBatch batch;
  batch.transport_failures = failures.load();
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (records[i]) {
      batch.records.push_back(std::move(*records[i]));
    } else {
      batch.rejected.push_back({pairs[i].pair_id, reasons[i]});
    }
  }
  return batch;
}

}  // namespace forensa
