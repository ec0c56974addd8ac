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

// The "Final Conclusion" block: its canonical rendering and a total parser
// that either recovers the three labels or names why it abstained.

#ifndef FORENSA_CONCLUSION_H_
#define FORENSA_CONCLUSION_H_

#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "json.hpp"

namespace forensa {

enum class Verdict { kGenuine, kDeepfake };
enum class Relationship { kSameSpeaker, kDifferentSpeakers };

std::string_view ToString(Verdict v);        // "Genuine" / "Deepfake"
std::string_view ToString(Relationship r);   // "Same Speaker" / "Different Speakers"

struct Conclusion {
  Verdict speaker1 = Verdict::kGenuine;
  Verdict speaker2 = Verdict::kGenuine;
  Relationship relationship = Relationship::kSameSpeaker;
  std::optional<std::string> reasoning;

  bool operator==(const Conclusion&) const = default;
};

enum class AbstainReason { kMissingBlock, kBadLabel, kTruncated, kContradictory };

std::string_view ToString(AbstainReason r);
AbstainReason ParseAbstainReason(std::string_view s);  // throws DataError

struct Abstain {
  AbstainReason reason = AbstainReason::kMissingBlock;
  std::string note;

  bool operator==(const Abstain&) const = default;
};

using ParseOutcome = std::variant<Conclusion, Abstain>;

inline bool IsAbstain(const ParseOutcome& o) {
  return std::holds_alternative<Abstain>(o);
}

inline constexpr std::string_view kConclusionHeader = "Final Conclusion:";

// Header line, then `- Speaker 1:`, `- Speaker 2:`, `- Speaker Relationship:`
// and, when with_reasoning, `- Reasoning:`. Whitespace runs in the reasoning
// collapse to single spaces. Ends with a newline.
std::string FormatConclusionBlock(const Conclusion& c, bool with_reasoning);

// Uses the last Speaker 1 / Speaker 2 / Speaker Relationship lines that occur
// in that order. Case, surrounding brackets, quotes, emphasis markers and
// whitespace are ignored; the label vocabulary is exact. Never throws.
ParseOutcome ParseConclusion(std::string_view text);

// Byte offset where the final conclusion block starts: its last header line,
// or lacking one, the Speaker 1 line that ParseConclusion would use.
std::optional<std::size_t> ConclusionBlockOffset(std::string_view text);

nlohmann::json ToJson(const ParseOutcome& o);
ParseOutcome ParseOutcomeFromJson(const nlohmann::json& j);
nlohmann::json ToJson(const Conclusion& c);
Conclusion ConclusionFromJson(const nlohmann::json& j);

}  // namespace forensa

#endif  // FORENSA_CONCLUSION_H_
