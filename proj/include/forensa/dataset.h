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

// Corpus construction: split repartitioning, quality filtering of synthetic
// utterances, reference/query pairing and the train/eval disjointness check.

#ifndef FORENSA_DATASET_H_
#define FORENSA_DATASET_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "forensa/evidence.h"
#include "forensa/jsonl.h"
#include "forensa/manifest.h"
#include "json.hpp"

namespace forensa {

inline constexpr std::string_view kManifestKind = "manifest";
inline constexpr std::string_view kPairsKind = "pairs";

std::vector<ManifestEntry> ReadManifest(const std::filesystem::path& path);
void WriteManifest(const std::filesystem::path& path, const ArtifactHeader& header,
                   std::span<const ManifestEntry> entries);

// kMain:      orig train -> train, orig eval -> train, orig dev -> eval.
// kTrainOnly: orig train -> train, orig dev and orig eval -> eval.
// Cosyfish entries keep an existing split; otherwise orig train -> train and
// any other orig split -> eval.
enum class RepartitionMode { kMain, kTrainOnly };

std::string_view ToString(RepartitionMode m);
RepartitionMode ParseRepartitionMode(std::string_view s);  // throws DataError

// Throws DataError when an asvspoof entry lacks orig_split.
std::vector<ManifestEntry> Repartition(std::span<const ManifestEntry> entries,
                                       RepartitionMode mode);

enum class FilterScope {
  kTts,    // fish and cosyvoice spoofs
  kSpoof,  // every spoof
  kAll,
};

struct FilterCriteria {
  double min_duration_s = 1.0;
  double max_duration_s = 20.0;
  double min_speech_ratio = 0.3;
  double min_voiced_ratio = 0.2;
  double max_clipping_ratio = 0.01;  // exclusive
  FilterScope scope = FilterScope::kTts;
};

enum class RejectReason { kDuration, kSpeechRatio, kVoicedRatio, kClipping };

std::string_view ToString(RejectReason r);

struct Rejection {
  ManifestEntry entry;
  RejectReason reason;
};

struct FilterResult {
  std::vector<ManifestEntry> kept;
  std::vector<Rejection> rejected;
};

// First failed criterion, or nullopt when the record passes.
std::optional<RejectReason> FirstFailedCriterion(const EvidenceRecord& rec,
                                                 const FilterCriteria& c);

// Entries outside the scope pass through to `kept`. Input order is preserved
// within each output list. Throws DataError when a candidate has no evidence.
FilterResult FilterSynthetic(std::span<const ManifestEntry> entries,
                             const EvidenceIndex& evidence,
                             const FilterCriteria& criteria);

struct AudioPair {
  std::string pair_id;
  std::string ref_utt;
  std::string query_utt;
  bool same_speaker = false;
  Label query_label = Label::kBonafide;
  std::optional<AttackerId> query_attacker;
  Split split = Split::kTrain;

  bool operator==(const AudioPair&) const = default;
};

nlohmann::json ToJson(const AudioPair& p);
AudioPair AudioPairFromJson(const nlohmann::json& j);

std::vector<AudioPair> ReadPairs(const std::filesystem::path& path);
void WritePairs(const std::filesystem::path& path, const ArtifactHeader& header,
                std::span<const AudioPair> pairs);

struct PairingPolicy {
  double p_same_speaker = 0.5;
  int pairs_per_query = 1;

  nlohmann::json ToJson() const;
};

// Every utterance is a query pairs_per_query times. Its reference is a
// bonafide utterance of the same split other than itself: same speaker with
// probability p_same_speaker when both kinds exist. Queries with no possible
// reference are skipped. pair_id is "<split>-<6-digit index within split>".
// Throws DataError for an unassigned split or a split with no bonafide.
std::vector<AudioPair> BuildPairs(std::span<const ManifestEntry> entries,
                                  const PairingPolicy& policy, std::uint64_t seed);

struct Straddle {
  std::string pair_id;
  std::string detail;

  bool operator==(const Straddle&) const = default;
};

struct DisjointReport {
  std::vector<std::string> shared_utts;  // sorted, unique
  std::vector<Straddle> straddling;

  bool empty() const { return shared_utts.empty() && straddling.empty(); }
  std::string ToText() const;
};

// A pair straddles when its split disagrees with the side it is listed on,
// when its pair_id appears on both sides, or (given a manifest) when either
// member's assigned split differs from the pair's.
DisjointReport CheckDisjoint(std::span<const AudioPair> train_pairs,
                             std::span<const AudioPair> eval_pairs,
                             std::span<const ManifestEntry> manifest = {});

}  // namespace forensa

#endif  // FORENSA_DATASET_H_
