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

// Corpus manifest records shared by every pipeline stage.

#ifndef FORENSA_MANIFEST_H_
#define FORENSA_MANIFEST_H_

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace forensa {

enum class Label { kBonafide, kSpoof };
enum class Partition { kAsvspoof, kCosyfish };
enum class OrigSplit { kTrain, kDev, kEval };
enum class Split { kTrain, kEval };

// Spoofing system identifier: A01..A19 from ASVspoof 2019 LA plus the two
// modern TTS systems. Ordered A01 < ... < A19 < fish < cosyvoice.
class AttackerId {
 public:
  static constexpr int kNumAsvspoof = 19;
  static constexpr int kFish = 20;
  static constexpr int kCosyVoice = 21;

  static std::optional<AttackerId> Parse(std::string_view text);
  static AttackerId Asvspoof(int n);  // n in [1, 19]
  static AttackerId Fish() { return AttackerId(kFish); }
  static AttackerId CosyVoice() { return AttackerId(kCosyVoice); }

  std::string ToString() const;
  int code() const { return code_; }
  bool IsTts() const { return code_ == kFish || code_ == kCosyVoice; }

  auto operator<=>(const AttackerId&) const = default;

 private:
  explicit AttackerId(int code) : code_(code) {}
  int code_;
};

struct ManifestEntry {
  std::string utt_id;
  std::string path;
  std::string speaker_id;
  Label label = Label::kBonafide;
  std::optional<AttackerId> attacker_id;
  Partition partition = Partition::kAsvspoof;
  std::optional<OrigSplit> orig_split;
  std::optional<Split> split;

  bool operator==(const ManifestEntry&) const = default;
};

std::string_view ToString(Label v);
std::string_view ToString(Partition v);
std::string_view ToString(OrigSplit v);
std::string_view ToString(Split v);

// Each throws DataError on an unknown spelling.
Label ParseLabel(std::string_view s);
Partition ParsePartition(std::string_view s);
OrigSplit ParseOrigSplit(std::string_view s);
Split ParseSplit(std::string_view s);

// Throws DataError when spoof/attacker consistency is violated.
void ValidateEntry(const ManifestEntry& e);

nlohmann::json ToJson(const ManifestEntry& e);
ManifestEntry ManifestEntryFromJson(const nlohmann::json& j);

}  // namespace forensa

#endif  // FORENSA_MANIFEST_H_
