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

#include "forensa/metrics.h"

#include <algorithm>
#include <cstdio>
#include <map>
#include <set>

namespace forensa {

namespace {

std::map<std::string_view, const AudioPair*> IndexPairs(std::span<const AudioPair> pairs,
                                                        std::span<const Prediction> preds) {
  if (preds.empty()) throw DataError("no predictions");
  std::map<std::string_view, const AudioPair*> index;
  for (const auto& p : pairs) {
    if (!index.emplace(p.pair_id, &p).second) {
      throw DataError("duplicate pair_id in pairs: " + p.pair_id);
    }
  }
  std::set<std::string_view> seen;
  for (const auto& pred : preds) {
    if (!seen.insert(pred.pair_id).second) {
      throw DataError("duplicate pair_id in predictions: " + pred.pair_id);
    }
    if (!index.contains(pred.pair_id)) {
      throw DataError("prediction without pair: " + pred.pair_id);
    }
  }
  for (const auto& p : pairs) {
    if (!seen.contains(p.pair_id)) throw DataError("pair without prediction: " + p.pair_id);
  }
  return index;
}

void Tally(Confusion& c, bool truth_positive, std::optional<bool> predicted_positive) {
  if (!predicted_positive) {
    ++(truth_positive ? c.abstain_pos : c.abstain_neg);
  } else if (*predicted_positive) {
    ++(truth_positive ? c.tp : c.fp);
  } else {
    ++(truth_positive ? c.fn : c.tn);
  }
}

std::string Fixed(double v, int decimals) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
  return buf;
}

std::string Pad(std::string s, std::size_t width, bool left = false) {
  if (s.size() >= width) return s;
  const std::string fill(width - s.size(), ' ');
  return left ? s + fill : fill + s;
}

nlohmann::json ToJson(const Confusion& c) {
  return {{"tp", c.tp}, {"fp", c.fp}, {"tn", c.tn}, {"fn", c.fn},
          {"abstain_pos", c.abstain_pos}, {"abstain_neg", c.abstain_neg}};
}

Confusion ConfusionFromJson(const nlohmann::json& j) {
  Confusion c;
  c.tp = j.at("tp").get<int>();
  c.fp = j.at("fp").get<int>();
  c.tn = j.at("tn").get<int>();
  c.fn = j.at("fn").get<int>();
  c.abstain_pos = j.at("abstain_pos").get<int>();
  c.abstain_neg = j.at("abstain_neg").get<int>();
  return c;
}

}  // namespace

double Accuracy(const Confusion& c) {
  const int n = c.total();
  return n == 0 ? 0.0 : static_cast<double>(c.tp + c.tn) / n;
}

double F1(const Confusion& c) {
  const int denom = 2 * c.tp + c.fp + c.fn + c.abstain_pos;
  return denom == 0 ? 0.0 : 2.0 * c.tp / denom;
}

std::string AttackerRow::name() const {
  return attacker ? attacker->ToString() : "Real";
}

std::optional<double> AttackerRow::acc_pct() const {
  const int n = correct + incorrect;
  if (n == 0) return std::nullopt;
  return 100.0 * correct / n;
}

EvalReport Score(std::span<const Prediction> predictions,
                 std::span<const AudioPair> pairs, const ScoreOptions& options) {
  const auto index = IndexPairs(pairs, predictions);
  EvalReport r;
  r.options = options;
  for (const auto& pred : predictions) {
    const AudioPair& pair = *index.at(pred.pair_id);
    const bool spoof = pair.query_label == Label::kSpoof;
    const bool add_truth_pos = options.genuine_positive ? !spoof : spoof;
    const bool asv_truth_pos =
        options.different_positive ? !pair.same_speaker : pair.same_speaker;
    std::optional<bool> add_pred, asv_pred;
    if (const auto* c = std::get_if<Conclusion>(&pred.outcome)) {
      const bool says_fake = c->speaker2 == Verdict::kDeepfake;
      const bool says_same = c->relationship == Relationship::kSameSpeaker;
      add_pred = options.genuine_positive ? !says_fake : says_fake;
      asv_pred = options.different_positive ? !says_same : says_same;
      ++r.speaker1_parsed;
      r.speaker1_genuine += c->speaker1 == Verdict::kGenuine;
    } else {
      ++r.n_abstain;
    }
    Tally(r.add, add_truth_pos, add_pred);
    Tally(r.asv, asv_truth_pos, asv_pred);
  }
  r.n_total = static_cast<int>(predictions.size());
  r.acc_add = Accuracy(r.add);
  r.f1_add = F1(r.add);
  r.acc_asv = Accuracy(r.asv);
  r.f1_asv = F1(r.asv);
  r.attacker_rows = AttackerBreakdown(predictions, pairs);
  return r;
}

std::vector<AttackerRow> AttackerBreakdown(std::span<const Prediction> predictions,
                                           std::span<const AudioPair> pairs) {
  const auto index = IndexPairs(pairs, predictions);
  AttackerRow real;
  std::map<AttackerId, AttackerRow> spoofed;
  for (const auto& pred : predictions) {
    const AudioPair& pair = *index.at(pred.pair_id);
    AttackerRow* row = &real;
    if (pair.query_label == Label::kSpoof) {
      row = &spoofed[*pair.query_attacker];
      row->attacker = pair.query_attacker;
    }
    const auto* c = std::get_if<Conclusion>(&pred.outcome);
    const Verdict truth =
        pair.query_label == Label::kSpoof ? Verdict::kDeepfake : Verdict::kGenuine;
    if (c != nullptr && c->speaker2 == truth) {
      ++row->correct;
    } else {
      ++row->incorrect;
    }
  }
  std::vector<AttackerRow> rows{real};
  for (auto& [id, row] : spoofed) rows.push_back(row);
  return rows;
}

nlohmann::json ToJson(const EvalReport& r) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : r.attacker_rows) {
    const auto pct = row.acc_pct();
    rows.push_back({{"attacker", row.name()},
                    {"correct", row.correct},
                    {"incorrect", row.incorrect},
                    {"acc_pct", pct ? nlohmann::json(*pct) : nlohmann::json(nullptr)}});
  }
  return {
      {"acc_add", r.acc_add},
      {"f1_add", r.f1_add},
      {"acc_asv", r.acc_asv},
      {"f1_asv", r.f1_asv},
      {"n_total", r.n_total},
      {"n_abstain", r.n_abstain},
      {"add", ToJson(r.add)},
      {"asv", ToJson(r.asv)},
      {"attacker_rows", rows},
      {"speaker1_genuine", r.speaker1_genuine},
      {"speaker1_parsed", r.speaker1_parsed},
      {"positive_class", {{"add", r.options.genuine_positive ? "Genuine" : "Deepfake"},
                          {"asv", r.options.different_positive ? "Different Speakers"
                                                               : "Same Speaker"}}},
  };
}

EvalReport EvalReportFromJson(const nlohmann::json& j) {
  try {
    EvalReport r;
    r.acc_add = j.at("acc_add").get<double>();
    r.f1_add = j.at("f1_add").get<double>();
    r.acc_asv = j.at("acc_asv").get<double>();
    r.f1_asv = j.at("f1_asv").get<double>();
    r.n_total = j.at("n_total").get<int>();
    r.n_abstain = j.at("n_abstain").get<int>();
    r.add = ConfusionFromJson(j.at("add"));
    r.asv = ConfusionFromJson(j.at("asv"));
    for (const auto& row : j.at("attacker_rows")) {
      AttackerRow a;
      const auto name = row.at("attacker").get<std::string>();
      if (name != "Real") {
        a.attacker = AttackerId::Parse(name);
        if (!a.attacker) throw DataError("unknown attacker in report: " + name);
      }
      a.correct = row.at("correct").get<int>();
      a.incorrect = row.at("incorrect").get<int>();
      r.attacker_rows.push_back(a);
    }
    r.speaker1_genuine = j.at("speaker1_genuine").get<int>();
    r.speaker1_parsed = j.at("speaker1_parsed").get<int>();
    const auto& pc = j.at("positive_class");
    r.options.genuine_positive = pc.at("add").get<std::string>() == "Genuine";
    r.options.different_positive = pc.at("asv").get<std::string>() == "Different Speakers";
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("bad report: ") + e.what());
  }
}

std::string RenderReport(const EvalReport& r, ReportFormat format) {
  if (r.n_total == 0) throw DataError("no predictions");
  if (format == ReportFormat::kJson) return ToJson(r).dump(2) + "\n";

  std::string out;
  out += "Acc_add  F1_add  Acc_asv  F1_asv\n";
  out += Pad(Fixed(r.acc_add, 3), 7, true) + "  " + Pad(Fixed(r.f1_add, 3), 6, true) +
         "  " + Pad(Fixed(r.acc_asv, 3), 7, true) + "  " + Pad(Fixed(r.f1_asv, 3), 6, true) +
         "\n";
  out += "n_total " + std::to_string(r.n_total) + ", n_abstain " +
         std::to_string(r.n_abstain) + "\n";

  constexpr std::size_t kBlock = 7;
  constexpr std::size_t kLabel = 10;
  constexpr std::size_t kCell = 7;
  for (std::size_t b = 0; b < r.attacker_rows.size(); b += kBlock) {
    const auto end = std::min(r.attacker_rows.size(), b + kBlock);
    std::string head = Pad("Attacker", kLabel, true);
    std::string good = Pad("Correct", kLabel, true);
    std::string bad = Pad("Incorrect", kLabel, true);
    std::string acc = Pad("Acc(%)", kLabel, true);
    for (std::size_t i = b; i < end; ++i) {
      const auto& row = r.attacker_rows[i];
      const auto pct = row.acc_pct();
      head += Pad(row.name(), kCell);
      good += Pad(std::to_string(row.correct), kCell);
      bad += Pad(std::to_string(row.incorrect), kCell);
      acc += Pad(pct ? Fixed(*pct, 1) : "n/a", kCell);
    }
    out += "\n" + head + "\n" + good + "\n" + bad + "\n" + acc + "\n";
  }
  return out;
}

}  // namespace forensa
