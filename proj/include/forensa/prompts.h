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

// Prompt rendering from a template with named placeholders, training target
// construction and removal of ground-truth leakage from generated reasoning.

#ifndef FORENSA_PROMPTS_H_
#define FORENSA_PROMPTS_H_

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "forensa/conclusion.h"
#include "forensa/dataset.h"
#include "forensa/features.h"
#include "json.hpp"

namespace forensa {

enum class PromptMode { kTraining, kInference };

struct GroundTruth {
  Verdict audio1 = Verdict::kGenuine;
  Verdict audio2 = Verdict::kGenuine;
  bool same_speaker = true;

  bool operator==(const GroundTruth&) const = default;
};

GroundTruth GroundTruthOf(const AudioPair& pair);
Conclusion ConclusionOf(const GroundTruth& truth);

// The ground-truth relationship wording used in prompts:
// "Same speaker" / "Different Speakers".
std::string_view GroundTruthRelationship(bool same_speaker);

// Placeholders: {audio1_label} {audio1_features} {audio2_label}
// {audio2_features} {gt_audio1} {gt_audio2} {gt_relationship}. Inference
// rendering drops every line holding a label or gt placeholder and the line
// that starts with "Ground Truth".
class PromptTemplate {
 public:
  // The versioned template shipped with the library.
  static const PromptTemplate& Default();
  static PromptTemplate FromFile(const std::filesystem::path& path);

  // Throws DataError on an unknown or missing placeholder.
  explicit PromptTemplate(std::string text);

  const std::string& text() const { return text_; }

  // Training mode requires truth; inference mode forbids it. Throws DataError.
  std::string Render(PromptMode mode, const AcousticEvidence& ev_ref,
                     const AcousticEvidence& ev_query,
                     const std::optional<GroundTruth>& truth) const;

 private:
  std::string text_;
};

std::string_view DefaultTemplateText();

enum class TargetVariant { kCoT, kShortCoT, kNoCoT };

std::string_view ToString(TargetVariant v);
TargetVariant ParseTargetVariant(std::string_view s);  // throws DataError

struct CotRecord {
  std::string pair_id;
  std::string full_reasoning;
  Conclusion conclusion;
  std::string short_reasoning;
  std::vector<std::string> scrub_flags;

  bool operator==(const CotRecord&) const = default;
};

nlohmann::json ToJson(const CotRecord& r);
CotRecord CotRecordFromJson(const nlohmann::json& j);

inline constexpr std::string_view kCotKind = "cot";

// CoT: full reasoning, blank line, conclusion block with the short reasoning.
// ShortCoT: conclusion block with the short reasoning.
// NoCoT: conclusion block without the Reasoning line.
std::string MakeTarget(const CotRecord& cot, TargetVariant variant);

struct ScrubFlag {
  std::string snippet;
  bool removed = true;  // false: inside the conclusion block, left for review

  bool operator==(const ScrubFlag&) const = default;
};

struct ScrubResult {
  std::string text;
  std::vector<ScrubFlag> flags;
};

std::span<const std::string_view> DefaultLeakPatterns();

// Drops every sentence before the final conclusion block that contains a
// pattern (case-insensitive). Matches inside the block are flagged only.
ScrubResult ScrubLeaks(std::string_view text,
                       std::span<const std::string> patterns);
ScrubResult ScrubLeaks(std::string_view text);

// Builds a record from a generated completion. Returns nullopt with `why`
// set when the conclusion does not parse or disagrees with truth.
std::optional<CotRecord> BuildCotRecord(const std::string& pair_id,
                                        std::string_view completion,
                                        const GroundTruth& truth,
                                        std::span<const std::string> patterns,
                                        std::string* why);

}  // namespace forensa

#endif  // FORENSA_PROMPTS_H_
