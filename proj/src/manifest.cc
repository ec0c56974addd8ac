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

#include "forensa/manifest.h"

#include <cctype>
#include <cstdio>
#include <stdexcept>

#include "forensa/error.h"

namespace forensa {

std::optional<AttackerId> AttackerId::Parse(std::string_view text) {
  if (text == "fish") return Fish();
  if (text == "cosyvoice") return CosyVoice();
  if (text.size() == 3 && text[0] == 'A' && std::isdigit(text[1]) &&
      std::isdigit(text[2])) {
    const int n = (text[1] - '0') * 10 + (text[2] - '0');
    if (n >= 1 && n <= kNumAsvspoof) return AttackerId(n);
  }
  return std::nullopt;
}

AttackerId AttackerId::Asvspoof(int n) {
  if (n < 1 || n > kNumAsvspoof) {
    throw std::invalid_argument("ASVspoof attacker index out of range");
  }
  return AttackerId(n);
}

std::string AttackerId::ToString() const {
  if (code_ == kFish) return "fish";
  if (code_ == kCosyVoice) return "cosyvoice";
  char buf[8];
  std::snprintf(buf, sizeof(buf), "A%02d", code_);
  return buf;
}

std::string_view ToString(Label v) {
  return v == Label::kBonafide ? "bonafide" : "spoof";
}

std::string_view ToString(Partition v) {
  return v == Partition::kAsvspoof ? "asvspoof" : "cosyfish";
}

std::string_view ToString(OrigSplit v) {
  switch (v) {
    case OrigSplit::kTrain: return "train";
    case OrigSplit::kDev: return "dev";
    case OrigSplit::kEval: return "eval";
  }
  return "";
}

std::string_view ToString(Split v) {
  return v == Split::kTrain ? "train" : "eval";
}

namespace {
[[noreturn]] void Unknown(std::string_view what, std::string_view s) {
  throw DataError("unknown " + std::string(what) + " '" + std::string(s) + "'");
}
}  // namespace

Label ParseLabel(std::string_view s) {
  if (s == "bonafide") return Label::kBonafide;
  if (s == "spoof") return Label::kSpoof;
  Unknown("label", s);
}

Partition ParsePartition(std::string_view s) {
  if (s == "asvspoof") return Partition::kAsvspoof;
  if (s == "cosyfish") return Partition::kCosyfish;
  Unknown("partition", s);
}

OrigSplit ParseOrigSplit(std::string_view s) {
  if (s == "train") return OrigSplit::kTrain;
  if (s == "dev") return OrigSplit::kDev;
  if (s == "eval") return OrigSplit::kEval;
  Unknown("orig_split", s);
}

Split ParseSplit(std::string_view s) {
  if (s == "train") return Split::kTrain;
  if (s == "eval") return Split::kEval;
  Unknown("split", s);
}

void ValidateEntry(const ManifestEntry& e) {
  if (e.utt_id.empty()) throw DataError("manifest entry with empty utt_id");
  const bool spoof = e.label == Label::kSpoof;
  if (spoof != e.attacker_id.has_value()) {
    throw DataError("entry " + e.utt_id +
                    ": spoof entries need an attacker_id and bonafide "
                    "entries must not have one");
  }
}

nlohmann::json ToJson(const ManifestEntry& e) {
  nlohmann::json j;
  j["utt_id"] = e.utt_id;
  j["path"] = e.path;
  j["speaker_id"] = e.speaker_id;
  j["label"] = ToString(e.label);
  j["attacker_id"] = e.attacker_id ? nlohmann::json(e.attacker_id->ToString())
                                   : nlohmann::json(nullptr);
  j["partition"] = ToString(e.partition);
  j["orig_split"] = e.orig_split ? nlohmann::json(ToString(*e.orig_split))
                                 : nlohmann::json(nullptr);
  j["split"] =
      e.split ? nlohmann::json(ToString(*e.split)) : nlohmann::json(nullptr);
  return j;
}

ManifestEntry ManifestEntryFromJson(const nlohmann::json& j) {
  try {
    ManifestEntry e;
    e.utt_id = j.at("utt_id").get<std::string>();
    e.path = j.value("path", std::string());
    e.speaker_id = j.at("speaker_id").get<std::string>();
    e.label = ParseLabel(j.at("label").get<std::string>());
    if (j.contains("attacker_id") && !j["attacker_id"].is_null()) {
      const auto text = j["attacker_id"].get<std::string>();
      e.attacker_id = AttackerId::Parse(text);
      if (!e.attacker_id) Unknown("attacker_id", text);
    }
    e.partition = ParsePartition(j.value("partition", std::string("asvspoof")));
    if (j.contains("orig_split") && !j["orig_split"].is_null()) {
      e.orig_split = ParseOrigSplit(j["orig_split"].get<std::string>());
    }
    if (j.contains("split") && !j["split"].is_null()) {
      e.split = ParseSplit(j["split"].get<std::string>());
    }
    ValidateEntry(e);
    return e;
  } catch (const nlohmann::json::exception& ex) {
    throw DataError(std::string("malformed manifest entry: ") + ex.what());
  }
}

}  // namespace forensa
