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

#include "forensa/evidence.h"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <set>
#include <variant>

namespace forensa {

namespace {

using Member = std::variant<double AcousticEvidence::*, Stat AcousticEvidence::*,
                            int AcousticEvidence::*>;

struct FieldSpec {
  EvidenceField field;
  Member member;
};

using U = EvidenceUnit;
using E = AcousticEvidence;

const std::array<FieldSpec, 22> kSpecs = {{
    {{"duration_s", U::kSeconds, false}, &E::duration_s},
    {{"pitch_mean_hz", U::kHz, true}, &E::pitch_mean_hz},
    {{"pitch_std_hz", U::kHz, true}, &E::pitch_std_hz},
    {{"pitch_min_hz", U::kHz, true}, &E::pitch_min_hz},
    {{"pitch_max_hz", U::kHz, true}, &E::pitch_max_hz},
    {{"voiced_ratio", U::kRatio, false}, &E::voiced_ratio},
    {{"f1_mean_hz", U::kHz, true}, &E::f1_mean_hz},
    {{"f2_mean_hz", U::kHz, true}, &E::f2_mean_hz},
    {{"f3_mean_hz", U::kHz, true}, &E::f3_mean_hz},
    {{"jitter_local_pct", U::kPercent, true}, &E::jitter_local_pct},
    {{"shimmer_local_pct", U::kPercent, true}, &E::shimmer_local_pct},
    {{"hnr_db", U::kDb, true}, &E::hnr_db},
    {{"rms_db_mean", U::kDb, true}, &E::rms_db_mean},
    {{"rms_db_std", U::kDb, true}, &E::rms_db_std},
    {{"spectral_centroid_hz", U::kHz, true}, &E::spectral_centroid_hz},
    {{"spectral_bandwidth_hz", U::kHz, true}, &E::spectral_bandwidth_hz},
    {{"spectral_rolloff85_hz", U::kHz, true}, &E::spectral_rolloff85_hz},
    {{"spectral_flux_mean", U::kFlux, true}, &E::spectral_flux_mean},
    {{"zcr_mean", U::kRatio, true}, &E::zcr_mean},
    {{"pause_count", U::kCount, false}, &E::pause_count},
    {{"pause_total_s", U::kSeconds, false}, &E::pause_total_s},
    {{"speech_ratio", U::kRatio, false}, &E::speech_ratio},
}};

constexpr std::string_view kUndefined = "n/a";

std::string FormatReal(double v, int decimals) {
  if (!std::isfinite(v)) return std::string(kUndefined);
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
  std::string s(buf);
  if (s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos) {
    s.erase(0, 1);
  }
  return s;
}

std::string FormatField(const FieldSpec& spec, const AcousticEvidence& ev) {
  const int d = Decimals(spec.field.unit);
  return std::visit(
      [&](auto member) -> std::string {
        const auto& v = ev.*member;
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, int>) {
          return std::to_string(v);
        } else if constexpr (std::is_same_v<T, Stat>) {
          return v ? FormatReal(*v, d) : std::string(kUndefined);
        } else {
          return FormatReal(v, d);
        }
      },
      spec.member);
}

bool IsDigits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

// -?digits(.digits)?
bool IsDecimal(std::string_view s) {
  if (!s.empty() && s.front() == '-') s.remove_prefix(1);
  const auto dot = s.find('.');
  if (dot == std::string_view::npos) return IsDigits(s);
  return IsDigits(s.substr(0, dot)) && IsDigits(s.substr(dot + 1));
}

std::string_view Trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void Fail(EvidenceParseErrorKind kind, int line, std::string_view key,
                       const std::string& detail) {
  throw EvidenceParseError(kind, line, std::string(key), detail);
}

void AssignField(const FieldSpec& spec, std::string_view value, int line,
                 AcousticEvidence& ev) {
  const std::string_view key = spec.field.key;
  std::visit(
      [&](auto member) {
        auto& slot = ev.*member;
        using T = std::decay_t<decltype(slot)>;
        if constexpr (std::is_same_v<T, int>) {
          int v = 0;
          const auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
          if (!IsDigits(value) || ec != std::errc() || p != value.data() + value.size()) {
            Fail(EvidenceParseErrorKind::kMalformedNumber, line, key,
                 "expected a non-negative integer, got '" + std::string(value) + "'");
          }
          slot = v;
        } else {
          if constexpr (std::is_same_v<T, Stat>) {
            if (value == kUndefined) {
              slot = std::nullopt;
              return;
            }
          }
          double v = 0.0;
          const auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
          if (!IsDecimal(value) || ec != std::errc() || p != value.data() + value.size()) {
            Fail(EvidenceParseErrorKind::kMalformedNumber, line, key,
                 "expected a decimal number, got '" + std::string(value) + "'");
          }
          slot = v == 0.0 ? 0.0 : v;
        }
      },
      spec.member);
}

const char* KindName(EvidenceParseErrorKind kind) {
  switch (kind) {
    case EvidenceParseErrorKind::kMalformedLine: return "malformed line";
    case EvidenceParseErrorKind::kUnknownKey: return "unknown key";
    case EvidenceParseErrorKind::kDuplicateKey: return "duplicate key";
    case EvidenceParseErrorKind::kMalformedNumber: return "malformed number";
    case EvidenceParseErrorKind::kMissingKey: return "missing key";
  }
  return "evidence error";
}

std::string ErrorMessage(EvidenceParseErrorKind kind, int line,
                         const std::string& key, const std::string& detail) {
  std::string msg = KindName(kind);
  if (line > 0) msg += " at line " + std::to_string(line);
  if (!key.empty()) msg += ": " + key;
  if (!detail.empty()) msg += " (" + detail + ")";
  return msg;
}

nlohmann::json StatToJson(const Stat& s) {
  return s ? nlohmann::json(*s) : nlohmann::json(nullptr);
}

}  // namespace

int Decimals(EvidenceUnit unit) {
  switch (unit) {
    case EvidenceUnit::kHz:
    case EvidenceUnit::kDb:
      return 1;
    case EvidenceUnit::kPercent:
      return 2;
    case EvidenceUnit::kRatio:
    case EvidenceUnit::kFlux:
    case EvidenceUnit::kSeconds:
      return 3;
    case EvidenceUnit::kCount:
      return 0;
  }
  return 0;
}

std::span<const EvidenceField> EvidenceFields() {
  static const auto fields = [] {
    std::array<EvidenceField, kSpecs.size()> out{};
    for (std::size_t i = 0; i < kSpecs.size(); ++i) out[i] = kSpecs[i].field;
    return out;
  }();
  return fields;
}

std::string SerializeEvidence(const AcousticEvidence& ev) {
  std::string out;
  for (const auto& spec : kSpecs) {
    out += "- ";
    out += spec.field.key;
    out += ": ";
    out += FormatField(spec, ev);
    out += '\n';
  }
  return out;
}

EvidenceParseError::EvidenceParseError(EvidenceParseErrorKind kind, int line,
                                       std::string key, const std::string& detail)
    : DataError(ErrorMessage(kind, line, key, detail)),
      kind_(kind),
      line_(line),
      key_(std::move(key)) {}

AcousticEvidence ParseEvidence(std::string_view text) {
  AcousticEvidence ev;
  std::set<std::string_view> seen;
  int line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    const std::string_view raw = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    const std::string_view line = Trim(raw);
    if (line.empty()) continue;
    if (line.substr(0, 2) != "- ") {
      Fail(EvidenceParseErrorKind::kMalformedLine, line_no, "",
           "expected '- key: value'");
    }
    const std::string_view body = line.substr(2);
    const auto colon = body.find(':');
    if (colon == std::string_view::npos) {
      Fail(EvidenceParseErrorKind::kMalformedLine, line_no, "",
           "expected '- key: value'");
    }
    const std::string_view key = Trim(body.substr(0, colon));
    const std::string_view value = Trim(body.substr(colon + 1));
    const FieldSpec* spec = nullptr;
    for (const auto& s : kSpecs) {
      if (s.field.key == key) spec = &s;
    }
    if (spec == nullptr) {
      Fail(EvidenceParseErrorKind::kUnknownKey, line_no, key, "");
    }
    if (!seen.insert(spec->field.key).second) {
      Fail(EvidenceParseErrorKind::kDuplicateKey, line_no, key, "");
    }
    AssignField(*spec, value, line_no, ev);
  }
  for (const auto& s : kSpecs) {
    if (!seen.contains(s.field.key)) {
      Fail(EvidenceParseErrorKind::kMissingKey, 0, s.field.key, "");
    }
  }
  return ev;
}

AcousticEvidence QuantizeEvidence(const AcousticEvidence& ev) {
  AcousticEvidence out = ev;
  for (const auto& spec : kSpecs) {
    std::visit(
        [&](auto member) {
          auto& slot = out.*member;
          using T = std::decay_t<decltype(slot)>;
          if constexpr (std::is_same_v<T, Stat>) {
            if (!slot) return;
            if (!std::isfinite(*slot)) {
              slot = std::nullopt;
              return;
            }
            slot = std::strtod(FormatReal(*slot, Decimals(spec.field.unit)).c_str(),
                               nullptr);
          } else if constexpr (std::is_same_v<T, double>) {
            if (!std::isfinite(slot)) return;
            slot = std::strtod(FormatReal(slot, Decimals(spec.field.unit)).c_str(),
                               nullptr);
          }
        },
        spec.member);
  }
  return out;
}

nlohmann::json ToJson(const EvidenceRecord& r) {
  nlohmann::json j;
  j["utt_id"] = r.utt_id;
  for (const auto& spec : kSpecs) {
    std::visit(
        [&](auto member) {
          const auto& v = r.evidence.*member;
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, Stat>) {
            j[std::string(spec.field.key)] = StatToJson(v);
          } else {
            j[std::string(spec.field.key)] = v;
          }
        },
        spec.member);
  }
  j["clipping_ratio"] = StatToJson(r.clipping_ratio);
  return j;
}

EvidenceRecord EvidenceRecordFromJson(const nlohmann::json& j) {
  try {
    EvidenceRecord r;
    r.utt_id = j.at("utt_id").get<std::string>();
    for (const auto& spec : kSpecs) {
      const auto& v = j.at(std::string(spec.field.key));
      std::visit(
          [&](auto member) {
            auto& slot = r.evidence.*member;
            using T = std::decay_t<decltype(slot)>;
            if constexpr (std::is_same_v<T, Stat>) {
              slot = v.is_null() ? Stat{} : Stat{v.get<double>()};
            } else {
              slot = v.get<T>();
            }
          },
          spec.member);
    }
    if (j.contains("clipping_ratio") && !j["clipping_ratio"].is_null()) {
      r.clipping_ratio = j["clipping_ratio"].get<double>();
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("bad evidence record: ") + e.what());
  }
}

void WriteEvidenceFile(const std::filesystem::path& path,
                       const ArtifactHeader& header,
                       std::span<const EvidenceRecord> records) {
  std::vector<nlohmann::json> rows;
  rows.reserve(records.size());
  for (const auto& r : records) rows.push_back(ToJson(r));
  WriteJsonl(path, header, rows);
}

EvidenceIndex IndexEvidence(std::span<const EvidenceRecord> records) {
  EvidenceIndex index;
  for (const auto& r : records) {
    if (!index.emplace(r.utt_id, r).second) {
      throw DataError("duplicate evidence record: " + r.utt_id);
    }
  }
  return index;
}

EvidenceIndex ReadEvidenceFile(const std::filesystem::path& path) {
  const JsonlDocument doc = ReadJsonl(path, kEvidenceKind);
  std::vector<EvidenceRecord> records;
  records.reserve(doc.rows.size());
  for (const auto& row : doc.rows) records.push_back(EvidenceRecordFromJson(row));
  return IndexEvidence(records);
}

}  // namespace forensa
