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

// Scoring of parsed predictions for deepfake detection (query authenticity)
// and speaker verification (relationship). An abstention is never correct;
// for F1 it counts as a negative-class prediction.

#ifndef FORENSA_METRICS_H_
#define FORENSA_METRICS_H_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "forensa/dataset.h"
#include "forensa/harness.h"
#include "json.hpp"

namespace forensa {

// Counts relative to the positive class. The six counts sum to n.
struct Confusion {
  int tp = 0;
  int fp = 0;
  int tn = 0;
  int fn = 0;
  int abstain_pos = 0;  // abstained, truth positive
  int abstain_neg = 0;  // abstained, truth negative

  int total() const { return tp + fp + tn + fn + abstain_pos + abstain_neg; }
  int abstained() const { return abstain_pos + abstain_neg; }
  bool operator==(const Confusion&) const = default;
};

// (tp + tn) / n, 0 for n = 0.
double Accuracy(const Confusion& c);
// 2 tp / (2 tp + fp + fn + abstain_pos), 0 when the denominator is 0.
double F1(const Confusion& c);

struct AttackerRow {
  std::optional<AttackerId> attacker;  // nullopt is the bonafide "Real" row
  int correct = 0;
  int incorrect = 0;

  std::string name() const;
  // 100 correct / (correct + incorrect); undefined for an empty row.
  std::optional<double> acc_pct() const;
  bool operator==(const AttackerRow&) const = default;
};

struct ScoreOptions {
  // Positive classes default to Deepfake and Same Speaker.
  bool genuine_positive = false;
  bool different_positive = false;

  bool operator==(const ScoreOptions&) const = default;
};

struct EvalReport {
  int n_total = 0;
  int n_abstain = 0;
  Confusion add;
  Confusion asv;
  double acc_add = 0.0;
  double f1_add = 0.0;
  double acc_asv = 0.0;
  double f1_asv = 0.0;
  std::vector<AttackerRow> attacker_rows;
  // Auxiliary: parsed Speaker 1 verdicts that say Genuine, out of parsed.
  int speaker1_genuine = 0;
  int speaker1_parsed = 0;
  ScoreOptions options;

  bool operator==(const EvalReport&) const = default;
};

// Throws DataError on an empty set ("no predictions"), duplicate ids, or
// when prediction and pair ids differ.
EvalReport Score(std::span<const Prediction> predictions,
                 std::span<const AudioPair> pairs, const ScoreOptions& options = {});

// Real first, then each attacker present in ascending id order. Correct means
// parsed and the Speaker 2 verdict matches the query's authenticity.
std::vector<AttackerRow> AttackerBreakdown(std::span<const Prediction> predictions,
                                           std::span<const AudioPair> pairs);

enum class ReportFormat { kText, kJson };

// Throws DataError("no predictions") for n_total = 0.
std::string RenderReport(const EvalReport& report, ReportFormat format);

nlohmann::json ToJson(const EvalReport& r);
EvalReport EvalReportFromJson(const nlohmann::json& j);

}  // namespace forensa

#endif  // FORENSA_METRICS_H_
