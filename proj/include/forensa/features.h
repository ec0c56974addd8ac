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

// Clip-level acoustic evidence: prosody, formants, voice quality, energy,
// spectral shape and pausing. Statistics whose support is empty are
// std::nullopt ("undefined"), never zero.

#ifndef FORENSA_FEATURES_H_
#define FORENSA_FEATURES_H_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "forensa/audio_io.h"
#include "forensa/kernels.h"
#include "json.hpp"

namespace forensa {

using Stat = std::optional<double>;

struct FeatureConfig {
  double frame_ms = 25.0;
  double hop_ms = 10.0;

  double f0_min_hz = 60.0;
  double f0_max_hz = 400.0;
  double yin_threshold = 0.15;
  double voicing_floor_db = -50.0;

  int lpc_order = 0;  // 0 selects 2 + sample rate in kHz
  double preemphasis = 0.97;
  double formant_max_bandwidth_hz = 400.0;
  double formant_min_freq_hz = 90.0;

  double period_factor = 1.3;  // max ratio of adjacent periods for jitter

  double hnr_min_db = -20.0;
  double hnr_max_db = 40.0;

  double vad_floor_db = -40.0;
  double vad_relative_db = 20.0;
  double min_pause_ms = 200.0;

  kernels::Backend backend = kernels::Backend::kOpenMP;

  nlohmann::json ToJson() const;
  static FeatureConfig FromJson(const nlohmann::json& j);
};

struct PitchTrack {
  kernels::FrameGrid grid;
  std::vector<double> f0_hz;         // 0 where unvoiced
  std::vector<std::uint8_t> voiced;  // 0/1 per frame
  std::vector<double> periodicity;   // normalized autocorrelation at f0
  int sample_rate = 0;

  std::size_t voiced_count() const;
};

struct PitchStats {
  Stat mean_hz, std_hz, min_hz, max_hz;
  double voiced_ratio = 0.0;
};

struct FormantMeans {
  Stat f1_hz, f2_hz, f3_hz;
};

struct VoiceQuality {
  Stat jitter_local_pct;
  Stat shimmer_local_pct;
};

struct EnergySpectralProfile {
  Stat rms_db_mean, rms_db_std;
  Stat centroid_hz, bandwidth_hz, rolloff85_hz;
  Stat flux_mean;
  Stat zcr_mean;
};

struct PauseStats {
  int pause_count = 0;
  double pause_total_s = 0.0;
  double speech_ratio = 0.0;
};

struct AcousticEvidence {
  double duration_s = 0.0;
  Stat pitch_mean_hz, pitch_std_hz, pitch_min_hz, pitch_max_hz;
  double voiced_ratio = 0.0;
  Stat f1_mean_hz, f2_mean_hz, f3_mean_hz;
  Stat jitter_local_pct, shimmer_local_pct, hnr_db;
  Stat rms_db_mean, rms_db_std;
  Stat spectral_centroid_hz, spectral_bandwidth_hz, spectral_rolloff85_hz;
  Stat spectral_flux_mean, zcr_mean;
  int pause_count = 0;
  double pause_total_s = 0.0;
  double speech_ratio = 0.0;

  bool operator==(const AcousticEvidence&) const = default;
};

// Frame grid shared by every extractor for this clip.
kernels::FrameGrid AnalysisGrid(const AudioClip& clip, const FeatureConfig& cfg);

// YIN f0 per frame with an energy floor on voicing.
PitchTrack F0Contour(const AudioClip& clip, const FeatureConfig& cfg);
PitchStats SummarizePitch(const PitchTrack& track);

// LPC root formants. Means for F1..Fk are taken over the frames that yield
// at least k candidates, where k is the largest count any voiced frame
// reaches; higher formants stay undefined.
FormantMeans EstimateFormants(const AudioClip& clip, const PitchTrack& pitch,
                              const FeatureConfig& cfg);

struct PeriodMark {
  double position_s = 0.0;
  double amplitude = 0.0;
  int run = 0;  // index of the voiced run the mark belongs to
};

// Waveform peaks one local period apart inside each voiced run.
std::vector<PeriodMark> FindPeriodMarks(const AudioClip& clip,
                                        const PitchTrack& pitch);

// Local jitter and shimmer from period marks. Needs at least 3 periods.
VoiceQuality VoiceQualityFromMarks(std::span<const PeriodMark> marks,
                                   const FeatureConfig& cfg);
VoiceQuality JitterShimmer(const AudioClip& clip, const PitchTrack& pitch,
                           const FeatureConfig& cfg);

Stat Hnr(const AudioClip& clip, const PitchTrack& pitch, const FeatureConfig& cfg);

EnergySpectralProfile AnalyzeEnergySpectrum(const AudioClip& clip,
                                            const FeatureConfig& cfg);
PauseStats DetectPauses(const AudioClip& clip, const FeatureConfig& cfg);

// Composition of every extractor above. Pure in (samples, rate, cfg).
AcousticEvidence ExtractEvidence(const AudioClip& clip, const FeatureConfig& cfg);

// Clips are processed in parallel; output order matches input order.
std::vector<AcousticEvidence> ExtractEvidenceBatch(std::span<const AudioClip> clips,
                                                   const FeatureConfig& cfg);

}  // namespace forensa

#endif  // FORENSA_FEATURES_H_
