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

#include "forensa/conclusion.h"

#include <algorithm>
#include <cctype>
#include <vector>

#include "forensa/error.h"

namespace forensa {

namespace {

enum class LineKind { kOther, kSpeaker1, kSpeaker2, kRelationship, kReasoning };

struct LabelLine {
  LineKind kind = LineKind::kOther;
  std::string value;  // text after the colon, emphasis removed
};

constexpr std::string_view kKeys[] = {"speaker 1", "speaker 2",
                                      "speaker relationship", "reasoning"};
constexpr LineKind kKinds[] = {LineKind::kSpeaker1, LineKind::kSpeaker2,
                               LineKind::kRelationship, LineKind::kReasoning};

bool IsSpace(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

std::string Lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string CollapseSpace(std::string_view s) {
  std::string out;
  bool pending = false;
  for (char c : s) {
    if (IsSpace(c)) {
      pending = !out.empty();
      continue;
    }
    if (pending) out += ' ';
    pending = false;
    out += c;
  }
  return out;
}

std::string RemoveAll(std::string s, std::string_view token) {
  for (auto pos = s.find(token); pos != std::string::npos; pos = s.find(token, pos)) {
    s.erase(pos, token.size());
  }
  return s;
}

// Bullet markers, emphasis and whitespace removed; whitespace collapsed.
std::string NormalizeLine(std::string_view raw) {
  std::string s = RemoveAll(RemoveAll(std::string(raw), "**"), "__");
  s = CollapseSpace(s);
  std::size_t i = 0;
  while (i < s.size() && (s[i] == '-' || s[i] == '*' || s[i] == '>' || s[i] == '#' ||
                          s[i] == ' ')) {
    ++i;
  }
  if (s.compare(i, 3, "\xE2\x80\xA2") == 0) i += 3;  // bullet
  while (i < s.size() && s[i] == ' ') ++i;
  return s.substr(i);
}

LabelLine Classify(std::string_view raw) {
  const std::string norm = NormalizeLine(raw);
  const std::string low = Lower(norm);
  for (std::size_t k = 0; k < std::size(kKeys); ++k) {
    const std::string_view key = kKeys[k];
    if (low.compare(0, key.size(), key) != 0) continue;
    std::size_t i = key.size();
    while (i < low.size() && low[i] == ' ') ++i;
    if (i >= low.size() || low[i] != ':') continue;
    return {kKinds[k], norm.substr(i + 1)};
  }
  return {};
}

std::string NormalizeValue(std::string_view raw) {
  std::string s = CollapseSpace(raw);
  auto strip = [](char c) {
    return c == ' ' || c == '[' || c == ']' || c == '(' || c == ')' || c == '"' ||
           c == '\'' || c == '`' || c == '*' || c == '_' || c == '.';
  };
  std::size_t b = 0, e = s.size();
  while (b < e && strip(s[b])) ++b;
  while (e > b && strip(s[e - 1])) --e;
  return Lower(CollapseSpace(s.substr(b, e - b)));
}

bool IsProperPrefix(std::string_view part, std::string_view whole) {
  return part.size() < whole.size() && whole.substr(0, part.size()) == part;
}

// A line's normalized text that could be the start of a label line cut off.
bool LooksLikeCutLabel(std::string_view raw) {
  const std::string low = Lower(NormalizeLine(raw));
  if (low.size() < 3) return false;
  for (std::string_view key : {"speaker 1:", "speaker 2:", "speaker relationship:",
                               "final conclusion:"}) {
    if (IsProperPrefix(low, key) || low == key) return true;
  }
  return false;
}

struct LabelResult {
  int index = -1;  // vocabulary index, or -1 with reason set
  AbstainReason reason = AbstainReason::kBadLabel;
};

LabelResult MatchLabel(const std::string& raw_value, std::string_view a,
                       std::string_view b, std::string_view a_word,
                       std::string_view b_word, bool at_end) {
  const std::string v = NormalizeValue(raw_value);
  if (v.empty()) return {-1, at_end ? AbstainReason::kTruncated : AbstainReason::kBadLabel};
  if (v == a) return {0, {}};
  if (v == b) return {1, {}};
  if (v.find(a_word) != std::string::npos && v.find(b_word) != std::string::npos) {
    return {-1, AbstainReason::kContradictory};
  }
  if (at_end && (IsProperPrefix(v, a) || IsProperPrefix(v, b))) {
    return {-1, AbstainReason::kTruncated};
  }
  return {-1, AbstainReason::kBadLabel};
}

Abstain MakeAbstain(AbstainReason reason, std::string note) {
  return Abstain{reason, std::move(note)};
}

}  // namespace

std::string_view ToString(Verdict v) {
  return v == Verdict::kGenuine ? "Genuine" : "Deepfake";
}

std::string_view ToString(Relationship r) {
  return r == Relationship::kSameSpeaker ? "Same Speaker" : "Different Speakers";
}

std::string_view ToString(AbstainReason r) {
  switch (r) {
    case AbstainReason::kMissingBlock: return "missing_block";
    case AbstainReason::kBadLabel: return "bad_label";
    case AbstainReason::kTruncated: return "truncated";
    case AbstainReason::kContradictory: return "contradictory";
  }
  return "missing_block";
}

AbstainReason ParseAbstainReason(std::string_view s) {
  for (auto r : {AbstainReason::kMissingBlock, AbstainReason::kBadLabel,
                 AbstainReason::kTruncated, AbstainReason::kContradictory}) {
    if (ToString(r) == s) return r;
  }
  throw DataError("unknown abstain reason: " + std::string(s));
}

std::string FormatConclusionBlock(const Conclusion& c, bool with_reasoning) {
  std::string out(kConclusionHeader);
  out += "\n- Speaker 1: ";
  out += ToString(c.speaker1);
  out += "\n- Speaker 2: ";
  out += ToString(c.speaker2);
  out += "\n- Speaker Relationship: ";
  out += ToString(c.relationship);
  out += '\n';
  if (with_reasoning) {
    out += "- Reasoning: ";
    out += CollapseSpace(c.reasoning.value_or(""));
    out += '\n';
  }
  return out;
}

ParseOutcome ParseConclusion(std::string_view text) {
  std::vector<std::string_view> lines;
  for (std::size_t start = 0; start <= text.size();) {
    const auto nl = text.find('\n', start);
    const auto end = nl == std::string_view::npos ? text.size() : nl;
    lines.push_back(text.substr(start, end - start));
    if (nl == std::string_view::npos) break;
    start = nl + 1;
  }
  int last_nonempty = -1;
  for (int i = static_cast<int>(lines.size()) - 1; i >= 0; --i) {
    if (!CollapseSpace(lines[i]).empty()) {
      last_nonempty = i;
      break;
    }
  }
  if (last_nonempty < 0) return MakeAbstain(AbstainReason::kMissingBlock, "empty text");

  std::vector<LabelLine> parsed(lines.size());
  for (std::size_t i = 0; i < lines.size(); ++i) parsed[i] = Classify(lines[i]);

  auto find_last = [&](LineKind kind, int before) {
    for (int i = before - 1; i >= 0; --i) {
      if (parsed[i].kind == kind) return i;
    }
    return -1;
  };
  const int n = static_cast<int>(lines.size());
  const int r = find_last(LineKind::kRelationship, n);
  if (r < 0) {
    const LineKind tail = parsed[last_nonempty].kind;
    if (tail == LineKind::kSpeaker1 || tail == LineKind::kSpeaker2 ||
        LooksLikeCutLabel(lines[last_nonempty])) {
      return MakeAbstain(AbstainReason::kTruncated, "text ends inside the block");
    }
    return MakeAbstain(AbstainReason::kMissingBlock, "no Speaker Relationship line");
  }
  const int s2 = find_last(LineKind::kSpeaker2, r);
  const int s1 = s2 < 0 ? -1 : find_last(LineKind::kSpeaker1, s2);
  if (s2 < 0 || s1 < 0) {
    return MakeAbstain(AbstainReason::kMissingBlock,
                       s2 < 0 ? "no Speaker 2 line" : "no Speaker 1 line");
  }

  Conclusion c;
  const int idx[3] = {s1, s2, r};
  const char* names[3] = {"Speaker 1", "Speaker 2", "Speaker Relationship"};
  for (int k = 0; k < 3; ++k) {
    const int line = idx[k];
    const bool at_end = line == last_nonempty;
    const LabelResult m =
        k < 2 ? MatchLabel(parsed[line].value, "genuine", "deepfake", "genuine",
                           "deepfake", at_end)
              : MatchLabel(parsed[line].value, "same speaker", "different speakers",
                           "same", "different", at_end);
    if (m.index < 0) {
      return MakeAbstain(m.reason, std::string(names[k]) + ": '" +
                                       CollapseSpace(parsed[line].value) + "'");
    }
    if (k == 0) c.speaker1 = m.index == 0 ? Verdict::kGenuine : Verdict::kDeepfake;
    if (k == 1) c.speaker2 = m.index == 0 ? Verdict::kGenuine : Verdict::kDeepfake;
    if (k == 2) {
      c.relationship = m.index == 0 ? Relationship::kSameSpeaker
                                    : Relationship::kDifferentSpeakers;
    }
  }

  int i = r + 1;
  while (i < n && CollapseSpace(lines[i]).empty()) ++i;
  if (i < n && parsed[i].kind == LineKind::kReasoning) {
    std::string reasoning = parsed[i].value;
    for (int j = i + 1; j < n && !CollapseSpace(lines[j]).empty(); ++j) {
      reasoning += ' ';
      reasoning += lines[j];
    }
    reasoning = CollapseSpace(reasoning);
    if (!reasoning.empty()) c.reasoning = std::move(reasoning);
  }
  return c;
}

std::optional<std::size_t> ConclusionBlockOffset(std::string_view text) {
  std::optional<std::size_t> header, speaker1, speaker2, relationship;
  for (std::size_t start = 0; start < text.size();) {
    const auto nl = text.find('\n', start);
    const auto end = nl == std::string_view::npos ? text.size() : nl;
    const std::string_view line = text.substr(start, end - start);
    const std::string low = Lower(NormalizeLine(line));
    if (low.rfind("final conclusion", 0) == 0) header = start;
    switch (Classify(line).kind) {
      case LineKind::kSpeaker1:
        speaker1 = start;
        break;
      case LineKind::kSpeaker2:
        if (speaker1) speaker2 = speaker1;
        break;
      case LineKind::kRelationship:
        if (speaker2) relationship = speaker2;
        break;
      default:
        break;
    }
    if (nl == std::string_view::npos) break;
    start = nl + 1;
  }
  if (header) return header;
  if (relationship) return relationship;
  return speaker1;
}

nlohmann::json ToJson(const Conclusion& c) {
  return {
      {"speaker1", ToString(c.speaker1)},
      {"speaker2", ToString(c.speaker2)},
      {"relationship", ToString(c.relationship)},
      {"reasoning", c.reasoning ? nlohmann::json(*c.reasoning) : nlohmann::json(nullptr)},
  };
}

Conclusion ConclusionFromJson(const nlohmann::json& j) {
  auto verdict = [](const std::string& s) {
    if (s == "Genuine") return Verdict::kGenuine;
    if (s == "Deepfake") return Verdict::kDeepfake;
    throw DataError("unknown verdict: " + s);
  };
  try {
    Conclusion c;
    c.speaker1 = verdict(j.at("speaker1").get<std::string>());
    c.speaker2 = verdict(j.at("speaker2").get<std::string>());
    const auto rel = j.at("relationship").get<std::string>();
    if (rel == "Same Speaker") {
      c.relationship = Relationship::kSameSpeaker;
    } else if (rel == "Different Speakers") {
      c.relationship = Relationship::kDifferentSpeakers;
    } else {
      throw DataError("unknown relationship: " + rel);
    }
    if (j.contains("reasoning") && !j["reasoning"].is_null()) {
      c.reasoning = j["reasoning"].get<std::string>();
    }
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("bad conclusion: ") + e.what());
  }
}

nlohmann::json ToJson(const ParseOutcome& o) {
  if (const auto* a = std::get_if<Abstain>(&o)) {
    return {{"abstain", ToString(a->reason)}, {"note", a->note}};
  }
  return {{"conclusion", ToJson(std::get<Conclusion>(o))}};
}

ParseOutcome ParseOutcomeFromJson(const nlohmann::json& j) {
  try {
    if (j.contains("conclusion")) return ConclusionFromJson(j.at("conclusion"));
    return Abstain{ParseAbstainReason(j.at("abstain").get<std::string>()),
                   j.value("note", std::string())};
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("bad outcome: ") + e.what());
  }
}

}  // namespace forensa
