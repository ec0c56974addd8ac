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

// Text form of AcousticEvidence: one `- key: value` line per field, in
// declaration order, fixed decimals per unit class, `n/a` for undefined.

#ifndef FORENSA_EVIDENCE_H_
#define FORENSA_EVIDENCE_H_

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "forensa/error.h"
#include "forensa/features.h"
#include "forensa/jsonl.h"
#include "json.hpp"

namespace forensa {

enum class EvidenceUnit {
  kHz,       // 1 decimal
  kDb,       // 1 decimal
  kRatio,    // 3 decimals
  kFlux,     // 3 decimals
  kPercent,  // 2 decimals
  kSeconds,  // 3 decimals
  kCount,    // integer
};

int Decimals(EvidenceUnit unit);

struct EvidenceField {
  std::string_view key;
  EvidenceUnit unit;
  bool optional;  // may render as n/a
};

// All fields in serialization order.
std::span<const EvidenceField> EvidenceFields();

std::string SerializeEvidence(const AcousticEvidence& ev);

enum class EvidenceParseErrorKind {
  kMalformedLine,
  kUnknownKey,
  kDuplicateKey,
  kMalformedNumber,
  kMissingKey,
};

class EvidenceParseError : public DataError {
 public:
  // line is 1-based; 0 for kMissingKey.
  EvidenceParseError(EvidenceParseErrorKind kind, int line, std::string key,
                     const std::string& detail);

  EvidenceParseErrorKind kind() const { return kind_; }
  int line() const { return line_; }
  const std::string& key() const { return key_; }

 private:
  EvidenceParseErrorKind kind_;
  int line_;
  std::string key_;
};

// Inverse of SerializeEvidence at the declared precision.
AcousticEvidence ParseEvidence(std::string_view text);

// Every field rounded to its declared precision;
// ParseEvidence(SerializeEvidence(ev)) == QuantizeEvidence(ev).
AcousticEvidence QuantizeEvidence(const AcousticEvidence& ev);

// Persisted per-utterance evidence.
struct EvidenceRecord {
  std::string utt_id;
  AcousticEvidence evidence;
  std::optional<double> clipping_ratio;

  bool operator==(const EvidenceRecord&) const = default;
};

nlohmann::json ToJson(const EvidenceRecord& r);
EvidenceRecord EvidenceRecordFromJson(const nlohmann::json& j);

using EvidenceIndex = std::map<std::string, EvidenceRecord, std::less<>>;

inline constexpr std::string_view kEvidenceKind = "evidence";

void WriteEvidenceFile(const std::filesystem::path& path,
                       const ArtifactHeader& header,
                       std::span<const EvidenceRecord> records);
// Throws DataError on duplicate utt_id.
EvidenceIndex ReadEvidenceFile(const std::filesystem::path& path);
EvidenceIndex IndexEvidence(std::span<const EvidenceRecord> records);

}  // namespace forensa

#endif  // FORENSA_EVIDENCE_H_
