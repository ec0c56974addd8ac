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

#include "forensa/prompts.h"

#include <algorithm>
#include <array>
#include <cctype>
#include <set>

#include "forensa/error.h"
#include "forensa/evidence.h"
#include "forensa/jsonl.h"

namespace forensa {

namespace internal {
extern const std::string_view kPromptTemplateV1;
}  // namespace internal

namespace {

constexpr std::array<std::string_view, 7> kPlaceholders = {
    "audio1_label", "audio1_features", "audio2_label", "audio2_features",
    "gt_audio1",    "gt_audio2",       "gt_relationship"};

constexpr std::array<std::string_view, 5> kDefaultPatterns = {
    "ground truth", "as instructed", "provided label", "I was told", "must match"};

bool DroppedInInference(std::string_view line) {
  return line.find("{audio1_label}") != std::string_view::npos ||
         line.find("{audio2_label}") != std::string_view::npos ||
         line.find("{gt_") != std::string_view::npos ||
         line.rfind("Ground Truth", 0) == 0;
}

std::string Lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string StripTrailingNewline(std::string s) {
  while (!s.empty() && s.back() == '\n') s.pop_back();
  return s;
}

std::string TrimCopy(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

bool Matches(std::string_view text, std::span<const std::string> lowered_patterns) {
  const std::string low = Lower(text);
  for (const auto& p : lowered_patterns) {
    if (!p.empty() && low.find(p) != std::string::npos) return true;
  }
  return false;
}

// Sentence spans [begin, end) within one line, terminators included.
std::vector<std::pair<std::size_t, std::size_t>> Sentences(std::string_view line) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  std::size_t begin = 0;
  while (begin < line.size() && line[begin] == ' ') ++begin;
  for (std::size_t i = begin; i < line.size(); ++i) {
    const char c = line[i];
    const bool terminator = c == '.' || c == '!' || c == '?';
    if (terminator && (i + 1 == line.size() || line[i + 1] == ' ')) {
      out.emplace_back(begin, i + 1);
      begin = i + 1;
      while (begin < line.size() && line[begin] == ' ') ++begin;
      i = begin - 1;
    }
  }
  if (begin < line.size() && !TrimCopy(line.substr(begin)).empty()) {
    out.emplace_back(begin, line.size());
  }
  return out;
}

std::string ScrubLine(std::string_view line, std::span<const std::string> patterns,
                      std::vector<ScrubFlag>& flags) {
  const auto spans = Sentences(line);
  const std::size_t before = flags.size();
  std::string kept;
  std::size_t prev_end = 0;
  bool any_kept = false;
  for (const auto& [b, e] : spans) {
    const std::string_view sentence = line.substr(b, e - b);
    if (Matches(sentence, patterns)) {
      flags.push_back({std::string(sentence), true});
    } else {
      // Indentation before the first kept sentence, original gap otherwise.
      kept.append(any_kept ? line.substr(prev_end, b - prev_end)
                           : line.substr(0, spans.front().first));
      kept.append(sentence);
      any_kept = true;
    }
    prev_end = e;
  }
  if (flags.size() == before) return std::string(line);
  return kept;
}

}  // namespace

GroundTruth GroundTruthOf(const AudioPair& pair) {
  return {Verdict::kGenuine,
          pair.query_label == Label::kSpoof ? Verdict::kDeepfake : Verdict::kGenuine,
          pair.same_speaker};
}

Conclusion ConclusionOf(const GroundTruth& truth) {
  Conclusion c;
  c.speaker1 = truth.audio1;
  c.speaker2 = truth.audio2;
  c.relationship = truth.same_speaker ? Relationship::kSameSpeaker
                                      : Relationship::kDifferentSpeakers;
  return c;
}

std::string_view GroundTruthRelationship(bool same_speaker) {
  return same_speaker ? "Same speaker" : "Different Speakers";
}

std::string_view DefaultTemplateText() { return internal::kPromptTemplateV1; }

const PromptTemplate& PromptTemplate::Default() {
  static const PromptTemplate t{std::string(DefaultTemplateText())};
  return t;
}

PromptTemplate PromptTemplate::FromFile(const std::filesystem::path& path) {
  return PromptTemplate(ReadTextFile(path));
}

PromptTemplate::PromptTemplate(std::string text) : text_(std::move(text)) {
  std::set<std::string_view> seen;
  for (std::size_t pos = text_.find('{'); pos != std::string::npos;
       pos = text_.find('{', pos + 1)) {
    const auto close = text_.find('}', pos);
    if (close == std::string::npos) throw DataError("unterminated placeholder in template");
    const std::string_view name = std::string_view(text_).substr(pos + 1, close - pos - 1);
    const auto it = std::find(kPlaceholders.begin(), kPlaceholders.end(), name);
    if (it == kPlaceholders.end()) {
      throw DataError("unknown template placeholder: {" + std::string(name) + "}");
    }
    seen.insert(*it);
  }
  for (std::string_view p : kPlaceholders) {
    if (!seen.contains(p)) {
      throw DataError("template lacks placeholder: {" + std::string(p) + "}");
    }
  }
}

std::string PromptTemplate::Render(PromptMode mode, const AcousticEvidence& ev_ref,
                                   const AcousticEvidence& ev_query,
                                   const std::optional<GroundTruth>& truth) const {
  if (mode == PromptMode::kTraining && !truth) {
    throw DataError("training prompt requires ground truth");
  }
  if (mode == PromptMode::kInference && truth) {
    throw DataError("inference prompt must not carry ground truth");
  }
  auto value = [&](std::string_view name) -> std::string {
    if (name == "audio1_features") return StripTrailingNewline(SerializeEvidence(ev_ref));
    if (name == "audio2_features") return StripTrailingNewline(SerializeEvidence(ev_query));
    if (name == "audio1_label" || name == "gt_audio1") {
      return std::string(ToString(truth->audio1));
    }
    if (name == "audio2_label" || name == "gt_audio2") {
      return std::string(ToString(truth->audio2));
    }
    return std::string(GroundTruthRelationship(truth->same_speaker));
  };

  std::string out;
  std::string_view rest = text_;
  while (!rest.empty()) {
    const auto nl = rest.find('\n');
    const std::string_view line =
        rest.substr(0, nl == std::string_view::npos ? rest.size() : nl + 1);
    rest.remove_prefix(line.size());
    if (mode == PromptMode::kInference && DroppedInInference(line)) continue;
    std::size_t cursor = 0;
    for (auto pos = line.find('{'); pos != std::string_view::npos;
         pos = line.find('{', cursor)) {
      const auto close = line.find('}', pos);
      out.append(line.substr(cursor, pos - cursor));
      out += value(line.substr(pos + 1, close - pos - 1));
      cursor = close + 1;
    }
    out.append(line.substr(cursor));
  }
  return out;
}

std::string_view ToString(TargetVariant v) {
  switch (v) {
    case TargetVariant::kCoT: return "cot";
    case TargetVariant::kShortCoT: return "short_cot";
    case TargetVariant::kNoCoT: return "no_cot";
  }
  return "cot";
}

TargetVariant ParseTargetVariant(std::string_view s) {
  for (auto v : {TargetVariant::kCoT, TargetVariant::kShortCoT, TargetVariant::kNoCoT}) {
    if (ToString(v) == s) return v;
  }
  throw DataError("unknown target variant: " + std::string(s));
}

nlohmann::json ToJson(const CotRecord& r) {
  return {
      {"pair_id", r.pair_id},
      {"full_reasoning", r.full_reasoning},
      {"conclusion", ToJson(r.conclusion)},
      {"short_reasoning", r.short_reasoning},
      {"scrub_flags", r.scrub_flags},
  };
}

CotRecord CotRecordFromJson(const nlohmann::json& j) {
  try {
    CotRecord r;
    r.pair_id = j.at("pair_id").get<std::string>();
    r.full_reasoning = j.at("full_reasoning").get<std::string>();
    r.conclusion = ConclusionFromJson(j.at("conclusion"));
    r.short_reasoning = j.at("short_reasoning").get<std::string>();
    r.scrub_flags = j.at("scrub_flags").get<std::vector<std::string>>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("bad cot record: ") + e.what());
  }
}

std::string MakeTarget(const CotRecord& cot, TargetVariant variant) {
  Conclusion c = cot.conclusion;
  c.reasoning = cot.short_reasoning;
  switch (variant) {
    case TargetVariant::kCoT: {
      std::string out = TrimCopy(cot.full_reasoning);
      if (!out.empty()) out += "\n\n";
      return out + FormatConclusionBlock(c, true);
    }
    case TargetVariant::kShortCoT:
      return FormatConclusionBlock(c, true);
    case TargetVariant::kNoCoT:
      return FormatConclusionBlock(c, false);
  }
  return {};
}

std::span<const std::string_view> DefaultLeakPatterns() { return kDefaultPatterns; }

ScrubResult ScrubLeaks(std::string_view text) {
  std::vector<std::string> patterns(kDefaultPatterns.begin(), kDefaultPatterns.end());
  return ScrubLeaks(text, patterns);
}

ScrubResult ScrubLeaks(std::string_view text, std::span<const std::string> patterns) {
  std::vector<std::string> lowered;
  for (const auto& p : patterns) lowered.push_back(Lower(p));

  const std::size_t split = ConclusionBlockOffset(text).value_or(text.size());
  const std::string_view body = text.substr(0, split);
  const std::string_view block = text.substr(split);

  ScrubResult result;
  std::string_view rest = body;
  while (!rest.empty()) {
    const auto nl = rest.find('\n');
    const std::string_view line = rest.substr(0, nl);
    const bool has_newline = nl != std::string_view::npos;
    rest.remove_prefix(has_newline ? nl + 1 : rest.size());
    const std::size_t before = result.flags.size();
    const std::string kept = ScrubLine(line, lowered, result.flags);
    if (kept.empty() && result.flags.size() > before) continue;  // line emptied
    result.text += kept;
    if (has_newline) result.text += '\n';
  }
  std::string_view tail = block;
  while (!tail.empty()) {
    const auto nl = tail.find('\n');
    const std::string_view line = tail.substr(0, nl);
    tail.remove_prefix(nl == std::string_view::npos ? tail.size() : nl + 1);
    if (Matches(line, lowered)) result.flags.push_back({TrimCopy(line), false});
  }
  result.text += block;
  return result;
}

std::optional<CotRecord> BuildCotRecord(const std::string& pair_id,
                                        std::string_view completion,
                                        const GroundTruth& truth,
                                        std::span<const std::string> patterns,
                                        std::string* why) {
  auto reject = [&](std::string reason) -> std::optional<CotRecord> {
    if (why != nullptr) *why = std::move(reason);
    return std::nullopt;
  };
  const ScrubResult scrubbed = ScrubLeaks(completion, patterns);
  const ParseOutcome outcome = ParseConclusion(scrubbed.text);
  if (const auto* a = std::get_if<Abstain>(&outcome)) {
    return reject("unparseable conclusion: " + std::string(ToString(a->reason)));
  }
  Conclusion parsed = std::get<Conclusion>(outcome);
  Conclusion expected = ConclusionOf(truth);
  expected.reasoning = parsed.reasoning;
  if (parsed != expected) return reject("conclusion contradicts ground truth");

  CotRecord r;
  r.pair_id = pair_id;
  const std::size_t split =
      ConclusionBlockOffset(scrubbed.text).value_or(scrubbed.text.size());
  r.full_reasoning = TrimCopy(std::string_view(scrubbed.text).substr(0, split));
  r.short_reasoning = parsed.reasoning.value_or("");
  r.conclusion = parsed;
  r.conclusion.reasoning = r.short_reasoning;
  for (const auto& f : scrubbed.flags) {
    r.scrub_flags.push_back((f.removed ? "removed: " : "review: ") + f.snippet);
  }
  return r;
}

}  // namespace forensa
