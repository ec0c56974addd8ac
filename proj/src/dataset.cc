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

#include "forensa/dataset.h"

#include <algorithm>
#include <cstdio>
#include <map>
#include <random>
#include <set>

namespace forensa {

namespace {

std::string PairId(Split split, std::size_t index) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%06zu", index);
  return std::string(ToString(split)) + "-" + buf;
}

bool InScope(const ManifestEntry& e, FilterScope scope) {
  switch (scope) {
    case FilterScope::kTts:
      return e.attacker_id && e.attacker_id->IsTts();
    case FilterScope::kSpoof:
      return e.label == Label::kSpoof;
    case FilterScope::kAll:
      return true;
  }
  return true;
}

// Uniform in [0, 1) from the top 53 bits.
double Uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

std::vector<ManifestEntry> ReadManifest(const std::filesystem::path& path) {
  const JsonlDocument doc = ReadJsonl(path, kManifestKind);
  std::vector<ManifestEntry> out;
  out.reserve(doc.rows.size());
  std::set<std::string> ids;
  for (const auto& row : doc.rows) {
    out.push_back(ManifestEntryFromJson(row));
    if (!ids.insert(out.back().utt_id).second) {
      throw DataError("duplicate utt_id in " + path.string() + ": " +
                      out.back().utt_id);
    }
  }
  return out;
}

void WriteManifest(const std::filesystem::path& path, const ArtifactHeader& header,
                   std::span<const ManifestEntry> entries) {
  std::vector<nlohmann::json> rows;
  rows.reserve(entries.size());
  for (const auto& e : entries) rows.push_back(ToJson(e));
  WriteJsonl(path, header, rows);
}

std::string_view ToString(RepartitionMode m) {
  return m == RepartitionMode::kMain ? "main" : "train_only";
}

RepartitionMode ParseRepartitionMode(std::string_view s) {
  if (s == "main") return RepartitionMode::kMain;
  if (s == "train_only") return RepartitionMode::kTrainOnly;
  throw DataError("unknown repartition mode: " + std::string(s));
}

std::vector<ManifestEntry> Repartition(std::span<const ManifestEntry> entries,
                                       RepartitionMode mode) {
  std::vector<ManifestEntry> out(entries.begin(), entries.end());
  for (auto& e : out) {
    if (e.partition == Partition::kCosyfish) {
      if (e.split) continue;
      if (!e.orig_split) {
        throw DataError("cosyfish entry has neither split nor orig_split: " +
                        e.utt_id);
      }
      e.split = *e.orig_split == OrigSplit::kTrain ? Split::kTrain : Split::kEval;
      continue;
    }
    if (!e.orig_split) {
      throw DataError("asvspoof entry without orig_split: " + e.utt_id);
    }
    switch (*e.orig_split) {
      case OrigSplit::kTrain:
        e.split = Split::kTrain;
        break;
      case OrigSplit::kDev:
        e.split = Split::kEval;
        break;
      case OrigSplit::kEval:
        e.split = mode == RepartitionMode::kMain ? Split::kTrain : Split::kEval;
        break;
    }
  }
  return out;
}

std::string_view ToString(RejectReason r) {
  switch (r) {
    case RejectReason::kDuration: return "duration";
    case RejectReason::kSpeechRatio: return "speech_ratio";
    case RejectReason::kVoicedRatio: return "voiced_ratio";
    case RejectReason::kClipping: return "clipping";
  }
  return "unknown";
}

std::optional<RejectReason> FirstFailedCriterion(const EvidenceRecord& rec,
                                                 const FilterCriteria& c) {
  const AcousticEvidence& ev = rec.evidence;
  if (!(ev.duration_s >= c.min_duration_s && ev.duration_s <= c.max_duration_s)) {
    return RejectReason::kDuration;
  }
  if (!(ev.speech_ratio >= c.min_speech_ratio)) return RejectReason::kSpeechRatio;
  if (!(ev.voiced_ratio >= c.min_voiced_ratio)) return RejectReason::kVoicedRatio;
  if (rec.clipping_ratio && !(*rec.clipping_ratio < c.max_clipping_ratio)) {
    return RejectReason::kClipping;
  }
  return std::nullopt;
}

FilterResult FilterSynthetic(std::span<const ManifestEntry> entries,
                             const EvidenceIndex& evidence,
                             const FilterCriteria& criteria) {
  FilterResult out;
  for (const auto& e : entries) {
    if (!InScope(e, criteria.scope)) {
      out.kept.push_back(e);
      continue;
    }
    const auto it = evidence.find(e.utt_id);
    if (it == evidence.end()) {
      throw DataError("missing evidence record for " + e.utt_id);
    }
    if (const auto reason = FirstFailedCriterion(it->second, criteria)) {
      out.rejected.push_back({e, *reason});
    } else {
      out.kept.push_back(e);
    }
  }
  return out;
}

nlohmann::json ToJson(const AudioPair& p) {
  return {
      {"pair_id", p.pair_id},
      {"ref_utt", p.ref_utt},
      {"query_utt", p.query_utt},
      {"same_speaker", p.same_speaker},
      {"query_label", ToString(p.query_label)},
      {"query_attacker", p.query_attacker ? nlohmann::json(p.query_attacker->ToString())
                                          : nlohmann::json(nullptr)},
      {"split", ToString(p.split)},
  };
}

AudioPair AudioPairFromJson(const nlohmann::json& j) {
  try {
    AudioPair p;
    p.pair_id = j.at("pair_id").get<std::string>();
    p.ref_utt = j.at("ref_utt").get<std::string>();
    p.query_utt = j.at("query_utt").get<std::string>();
    p.same_speaker = j.at("same_speaker").get<bool>();
    p.query_label = ParseLabel(j.at("query_label").get<std::string>());
    if (j.contains("query_attacker") && !j["query_attacker"].is_null()) {
      const auto text = j["query_attacker"].get<std::string>();
      p.query_attacker = AttackerId::Parse(text);
      if (!p.query_attacker) throw DataError("unknown attacker id: " + text);
    }
    p.split = ParseSplit(j.at("split").get<std::string>());
    if (p.ref_utt == p.query_utt) {
      throw DataError("pair " + p.pair_id + " uses one utterance twice");
    }
    if ((p.query_label == Label::kSpoof) != p.query_attacker.has_value()) {
      throw DataError("pair " + p.pair_id + ": attacker must accompany spoof");
    }
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("bad pair record: ") + e.what());
  }
}

std::vector<AudioPair> ReadPairs(const std::filesystem::path& path) {
  const JsonlDocument doc = ReadJsonl(path, kPairsKind);
  std::vector<AudioPair> out;
  out.reserve(doc.rows.size());
  std::set<std::string> ids;
  for (const auto& row : doc.rows) {
    out.push_back(AudioPairFromJson(row));
    if (!ids.insert(out.back().pair_id).second) {
      throw DataError("duplicate pair_id in " + path.string() + ": " +
                      out.back().pair_id);
    }
  }
  return out;
}

void WritePairs(const std::filesystem::path& path, const ArtifactHeader& header,
                std::span<const AudioPair> pairs) {
  std::vector<nlohmann::json> rows;
  rows.reserve(pairs.size());
  for (const auto& p : pairs) rows.push_back(ToJson(p));
  WriteJsonl(path, header, rows);
}

nlohmann::json PairingPolicy::ToJson() const {
  return {{"p_same_speaker", p_same_speaker}, {"pairs_per_query", pairs_per_query}};
}

std::vector<AudioPair> BuildPairs(std::span<const ManifestEntry> entries,
                                  const PairingPolicy& policy, std::uint64_t seed) {
  if (policy.pairs_per_query < 1 || !(policy.p_same_speaker >= 0.0) ||
      policy.p_same_speaker > 1.0) {
    throw DataError("invalid pairing policy");
  }
  std::map<Split, std::vector<const ManifestEntry*>> bonafide;
  std::set<Split> splits;
  for (const auto& e : entries) {
    if (!e.split) throw DataError("entry without assigned split: " + e.utt_id);
    splits.insert(*e.split);
    if (e.label == Label::kBonafide) bonafide[*e.split].push_back(&e);
  }
  for (Split s : splits) {
    if (bonafide[s].empty()) {
      throw DataError("split " + std::string(ToString(s)) +
                      " has no bonafide utterances");
    }
  }

  std::mt19937_64 rng(seed);
  std::map<Split, std::size_t> counters;
  std::vector<AudioPair> pairs;
  std::vector<const ManifestEntry*> same, other;
  for (const auto& q : entries) {
    const Split split = *q.split;
    same.clear();
    other.clear();
    for (const ManifestEntry* r : bonafide[split]) {
      if (r->utt_id == q.utt_id) continue;
      (r->speaker_id == q.speaker_id ? same : other).push_back(r);
    }
    if (same.empty() && other.empty()) continue;
    for (int k = 0; k < policy.pairs_per_query; ++k) {
      const std::vector<const ManifestEntry*>* pool = &other;
      if (same.empty()) {
        pool = &other;
      } else if (other.empty()) {
        pool = &same;
      } else if (Uniform01(rng) < policy.p_same_speaker) {
        pool = &same;
      }
      const ManifestEntry* ref = (*pool)[rng() % pool->size()];
      AudioPair p;
      p.pair_id = PairId(split, counters[split]++);
      p.ref_utt = ref->utt_id;
      p.query_utt = q.utt_id;
      p.same_speaker = ref->speaker_id == q.speaker_id;
      p.query_label = q.label;
      p.query_attacker = q.attacker_id;
      p.split = split;
      pairs.push_back(std::move(p));
    }
  }
  return pairs;
}

std::string DisjointReport::ToText() const {
  std::string out;
  for (const auto& u : shared_utts) out += "shared utterance: " + u + "\n";
  for (const auto& s : straddling) {
    out += "straddling pair: " + s.pair_id + " (" + s.detail + ")\n";
  }
  return out;
}

DisjointReport CheckDisjoint(std::span<const AudioPair> train_pairs,
                             std::span<const AudioPair> eval_pairs,
                             std::span<const ManifestEntry> manifest) {
  DisjointReport report;
  std::set<std::string> train_utts, eval_utts, train_ids;
  for (const auto& p : train_pairs) {
    train_utts.insert(p.ref_utt);
    train_utts.insert(p.query_utt);
    train_ids.insert(p.pair_id);
  }
  for (const auto& p : eval_pairs) {
    eval_utts.insert(p.ref_utt);
    eval_utts.insert(p.query_utt);
  }
  std::set_intersection(train_utts.begin(), train_utts.end(), eval_utts.begin(),
                        eval_utts.end(), std::back_inserter(report.shared_utts));

  std::map<std::string, std::optional<Split>, std::less<>> assigned;
  for (const auto& e : manifest) assigned[e.utt_id] = e.split;

  auto inspect = [&](const AudioPair& p, Split side) {
    if (p.split != side) {
      report.straddling.push_back(
          {p.pair_id, "pair split " + std::string(ToString(p.split)) +
                          " listed under " + std::string(ToString(side))});
    }
    if (side == Split::kEval && train_ids.contains(p.pair_id)) {
      report.straddling.push_back({p.pair_id, "pair_id on both sides"});
    }
    if (manifest.empty()) return;
    for (const std::string* utt : {&p.ref_utt, &p.query_utt}) {
      const auto it = assigned.find(*utt);
      if (it == assigned.end() || !it->second) continue;
      if (*it->second != p.split) {
        report.straddling.push_back(
            {p.pair_id, *utt + " belongs to " + std::string(ToString(*it->second)) +
                            " but pair is " + std::string(ToString(p.split))});
      }
    }
  };
  for (const auto& p : train_pairs) inspect(p, Split::kTrain);
  for (const auto& p : eval_pairs) inspect(p, Split::kEval);
  return report;
}

}  // namespace forensa
