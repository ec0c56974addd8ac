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

// Batch inference and chain-of-thought generation against a completion
// endpoint. Results come back in input order whatever the arrival order, and
// one pair's failure never aborts the batch.

#ifndef FORENSA_HARNESS_H_
#define FORENSA_HARNESS_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "forensa/conclusion.h"
#include "forensa/dataset.h"
#include "forensa/evidence.h"
#include "forensa/llm_client.h"
#include "forensa/prompts.h"
#include "json.hpp"

namespace forensa {

struct Prediction {
  std::string pair_id;
  std::string raw_text;
  ParseOutcome outcome;
  double latency_ms = 0.0;

  // Everything except latency_ms.
  bool SameResult(const Prediction& other) const;
};

nlohmann::json ToJson(const Prediction& p);
Prediction PredictionFromJson(const nlohmann::json& j);

inline constexpr std::string_view kPredictionsKind = "predictions";

std::vector<Prediction> ReadPredictions(const std::filesystem::path& path);
void WritePredictions(const std::filesystem::path& path, const ArtifactHeader& header,
                      std::span<const Prediction> predictions);

struct BatchConfig {
  std::string model = "forensa";
  int max_tokens = 512;
  double temperature = 0.0;
  std::uint64_t seed = 0;
  int jobs = 8;  // worker threads

  nlohmann::json ToJson() const;
};

struct BatchResult {
  std::vector<Prediction> predictions;
  int transport_failures = 0;
};

// "<seed>:<pair_id>"
std::string RequestId(std::uint64_t seed, const std::string& pair_id);

// Inference prompts, no stop strings. Missing evidence and transport
// failures become Abstain(truncated) with a note.
BatchResult RunBatch(std::span<const AudioPair> pairs, const EvidenceIndex& evidence,
                     LlmClient& client, const BatchConfig& cfg,
                     const PromptTemplate& tmpl = PromptTemplate::Default());

struct CotRejection {
  std::string pair_id;
  std::string reason;
};

struct CotBatch {
  std::vector<CotRecord> records;  // input order, accepted only
  std::vector<CotRejection> rejected;
  int transport_failures = 0;
};

// Training prompts with ground truth; completions are scrubbed and checked
// against truth. cfg.temperature is used as given.
CotBatch GenerateCot(std::span<const AudioPair> pairs, const EvidenceIndex& evidence,
                     LlmClient& client, const BatchConfig& cfg,
                     std::span<const std::string> leak_patterns,
                     const PromptTemplate& tmpl = PromptTemplate::Default());

}  // namespace forensa

#endif  // FORENSA_HARNESS_H_
