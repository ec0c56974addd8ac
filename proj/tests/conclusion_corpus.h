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

// Completions that must abstain, each with the reason the parser owes.
#ifndef FORENSA_TESTS_CONCLUSION_CORPUS_H_
#define FORENSA_TESTS_CONCLUSION_CORPUS_H_

#include <string>
#include <vector>

#include "forensa/conclusion.h"

namespace forensa::testing {

struct MalformedCase {
  std::string name;
  std::string text;
  AbstainReason reason;
};

inline std::vector<MalformedCase> MalformedConclusionCorpus() {
  using R = AbstainReason;
  const std::string head = "Both recordings share a narrow pitch range.\n\nFinal Conclusion:\n";
  return {
      {"empty", "", R::kMissingBlock},
      {"prose_only", "The first audio sounds natural and the second is smooth.", R::kMissingBlock},
      {"ends_after_speaker2", head + "- Speaker 1: Genuine\n- Speaker 2: Deepfake\n",
       R::kTruncated},
      {"unknown_label",
       head + "- Speaker 1: Genuine\n- Speaker 2: unknown\n- Speaker Relationship: Same Speaker\n",
       R::kBadLabel},
      {"synonym_real",
       head + "- Speaker 1: Real\n- Speaker 2: Genuine\n- Speaker Relationship: Same Speaker\n",
       R::kBadLabel},
      {"both_verdicts",
       head + "- Speaker 1: Genuine\n- Speaker 2: Genuine / Deepfake\n"
              "- Speaker Relationship: Same Speaker\n",
       R::kContradictory},
      {"both_relationships",
       head + "- Speaker 1: Genuine\n- Speaker 2: Deepfake\n"
              "- Speaker Relationship: Same or Different Speakers\n",
       R::kContradictory},
      {"relationship_maybe",
       head + "- Speaker 1: Genuine\n- Speaker 2: Deepfake\n- Speaker Relationship: Maybe\n",
       R::kBadLabel},
      {"cut_relationship_value",
       head + "- Speaker 1: Genuine\n- Speaker 2: Deepfake\n- Speaker Relationship: Diff",
       R::kTruncated},
      {"empty_relationship_at_end",
       head + "- Speaker 1: Genuine\n- Speaker 2: Deepfake\n- Speaker Relationship:",
       R::kTruncated},
      {"cut_key", head + "- Speaker 1: Genuine\n- Speak", R::kTruncated},
      {"wrong_order",
       head + "- Speaker Relationship: Same Speaker\n- Speaker 1: Genuine\n- Speaker 2: Genuine\n",
       R::kMissingBlock},
      {"no_speaker1", head + "- Speaker 2: Genuine\n- Speaker Relationship: Same Speaker\n",
       R::kMissingBlock},
      {"label_fake",
       head + "- Speaker 1: Genuine\n- Speaker 2: fake\n- Speaker Relationship: Same Speaker\n",
       R::kBadLabel},
      {"label_spoofed",
       head + "- Speaker 1: spoofed\n- Speaker 2: Genuine\n"
              "- Speaker Relationship: Different Speakers\n",
       R::kBadLabel},
      {"empty_value_inside",
       head + "- Speaker 1:\n- Speaker 2: Genuine\n- Speaker Relationship: Same Speaker\n",
       R::kBadLabel},
      {"header_only", head, R::kTruncated},
      {"template_echo",
       head + "- Speaker 1: [Genuine / Deepfake]\n- Speaker 2: [Genuine / Deepfake]\n"
              "- Speaker Relationship: [Same Speaker / Different Speakers]\n",
       R::kContradictory},
      {"renamed_keys",
       head + "- Speaker A: Genuine\n- Speaker B: Deepfake\n- Relationship: Same Speaker\n",
       R::kMissingBlock},
      {"relationship_unknown",
       head + "- Speaker 1: Genuine\n- Speaker 2: Deepfake\n- Speaker Relationship: Unknown\n"
              "- Reasoning: The evidence is inconclusive.\n",
       R::kBadLabel},
  };
}

}  // namespace forensa::testing

#endif  // FORENSA_TESTS_CONCLUSION_CORPUS_H_
