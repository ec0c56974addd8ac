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

#include "forensa/features.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "dsp_fixtures.h"
#include "test_signals.h"

namespace forensa {
namespace {

using testing::AddInPlace;
using testing::Alternating;
using testing::OracleJitterPct;
using testing::OracleShimmerPct;
using testing::PulseSpec;
using testing::ToneGapTone;
using testing::TwoResonatorSource;
using testing::ImpulseTrain;
using testing::Normalize;
using testing::PulseTrain;
using testing::Resonator;
using testing::Sine;
using testing::WhiteNoise;

constexpr int kRate = 16000;

AudioClip Clip(std::vector<float> x, int rate = kRate) {
  return AudioClip("clip", std::move(x), rate);
}

double Rms(const std::vector<float>& x) {
  double acc = 0.0;
  for (float v : x) acc += static_cast<double>(v) * v;
  return std::sqrt(acc / x.size());
}

double Median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// Frame f0 from the lag maximizing the plain autocorrelation over every lag
// of the search range.
double ExhaustiveAutocorrF0(const std::vector<float>& x, std::size_t start,
                            std::size_t len, int rate, double f0_min, double f0_max) {
  const int lo = static_cast<int>(std::ceil(rate / f0_max));
  const int hi = static_cast<int>(std::floor(rate / f0_min));
  double best = -1e300;
  int best_lag = lo;
  for (int lag = lo; lag <= hi; ++lag) {
    double acc = 0.0;
    for (std::size_t i = 0; i < len; ++i) {
      const std::size_t j = start + i + lag;
      if (j >= x.size()) break;
      acc += static_cast<double>(x[start + i]) * x[j];
    }
    if (acc > best) {
      best = acc;
      best_lag = lag;
    }
  }
  return static_cast<double>(rate) / best_lag;
}

TEST(F0Contour, SineIsVoicedAtItsFrequencyInEveryFrame) {
  const PitchTrack t = F0Contour(Clip(Sine(220.0, 2.0, kRate)), FeatureConfig{});
  ASSERT_EQ(t.grid.n_frames, 198u);
  EXPECT_EQ(t.voiced_count(), t.grid.n_frames);
  for (double f : t.f0_hz) {
    EXPECT_GE(f, 218.0);
    EXPECT_LE(f, 222.0);
  }
}

TEST(F0Contour, DigitalSilenceHasNoVoicedFrames) {
  const AudioClip c = Clip(std::vector<float>(kRate, 0.0f));
  const PitchTrack t = F0Contour(c, FeatureConfig{});
  EXPECT_EQ(t.voiced_count(), 0u);
  const PitchStats s = SummarizePitch(t);
  EXPECT_EQ(s.voiced_ratio, 0.0);
  EXPECT_FALSE(s.mean_hz.has_value());
  EXPECT_FALSE(s.min_hz.has_value());
}

TEST(F0Contour, NoisyImpulseTrainMatchesAutocorrelationOracle) {
  std::vector<float> x = ImpulseTrain(100.0, 2.0, kRate);
  // Noise at 5% of the train's RMS.
  AddInPlace(x, WhiteNoise(x.size(), 0.05 * Rms(x), 11));
  const FeatureConfig cfg;
  const PitchTrack t = F0Contour(Clip(x), cfg);

  std::vector<double> ours, oracle;
  for (std::size_t i = 0; i < t.grid.n_frames; ++i) {
    if (t.voiced[i]) ours.push_back(t.f0_hz[i]);
    oracle.push_back(ExhaustiveAutocorrF0(x, t.grid.start(i), t.grid.frame_len_samples,
                                          kRate, cfg.f0_min_hz, cfg.f0_max_hz));
  }
  ASSERT_GT(ours.size(), t.grid.n_frames * 9 / 10);
  const double med = Median(ours);
  EXPECT_GE(med, 98.0);
  EXPECT_LE(med, 102.0);
  EXPECT_NEAR(med, Median(oracle), 1.0);
}

TEST(F0Contour, VoicedFramesStayInRangeAndUnvoicedCarryZero) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> f0(40.0, 500.0), amp(0.0, 0.6), noise(0.0, 0.3);
  const FeatureConfig cfg;
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<float> x = Sine(f0(rng), 0.6, kRate, amp(rng));
    AddInPlace(x, Sine(f0(rng), 0.6, kRate, amp(rng)));
    AddInPlace(x, WhiteNoise(x.size(), noise(rng), trial));
    const PitchTrack t = F0Contour(Clip(x), cfg);
    for (std::size_t i = 0; i < t.grid.n_frames; ++i) {
      if (t.voiced[i]) {
        EXPECT_GE(t.f0_hz[i], cfg.f0_min_hz);
        EXPECT_LE(t.f0_hz[i], cfg.f0_max_hz);
      } else {
        EXPECT_EQ(t.f0_hz[i], 0.0);
      }
    }
  }
}

TEST(Formants, TwoResonatorsMatchPoleAngles) {
  const Resonator r1 = Resonator::Design(700.0, 80.0, kRate);
  const Resonator r2 = Resonator::Design(1200.0, 100.0, kRate);
  const AudioClip c = Clip(TwoResonatorSource(r1, r2));
  const FeatureConfig cfg;
  const FormantMeans f = EstimateFormants(c, F0Contour(c, cfg), cfg);
  ASSERT_TRUE(f.f1_hz && f.f2_hz);
  EXPECT_NEAR(*f.f1_hz, r1.PoleHz(kRate), 0.1 * r1.PoleHz(kRate));
  EXPECT_NEAR(*f.f2_hz, r2.PoleHz(kRate), 0.1 * r2.PoleHz(kRate));
}

TEST(Formants, SingleResonatorGivesF1) {
  const Resonator r = Resonator::Design(500.0, 80.0, kRate);
  std::vector<float> y = r.Apply(ImpulseTrain(110.0, 2.0, kRate));
  Normalize(y, 0.8);
  const AudioClip c = Clip(y);
  const FeatureConfig cfg;
  const FormantMeans f = EstimateFormants(c, F0Contour(c, cfg), cfg);
  ASSERT_TRUE(f.f1_hz);
  EXPECT_NEAR(*f.f1_hz, r.PoleHz(kRate), 0.1 * r.PoleHz(kRate));
}

TEST(Formants, WhiteNoiseLeavesAllUndefined) {
  const AudioClip c = Clip(WhiteNoise(2 * kRate, 0.1, 3));
  const FeatureConfig cfg;
  const FormantMeans f = EstimateFormants(c, F0Contour(c, cfg), cfg);
  EXPECT_FALSE(f.f1_hz || f.f2_hz || f.f3_hz);
}

TEST(Formants, AscendingOnRandomResonatorSynthesis) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> freq(250.0, 3500.0), bw(50.0, 200.0),
      f0(80.0, 250.0);
  const FeatureConfig cfg;
  int all_defined = 0;
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<float> y = ImpulseTrain(f0(rng), 0.8, kRate);
    for (int k = 0; k < 3; ++k) y = Resonator::Design(freq(rng), bw(rng), kRate).Apply(y);
    Normalize(y, 0.8);
    const AudioClip c = Clip(y);
    const FormantMeans f = EstimateFormants(c, F0Contour(c, cfg), cfg);
    if (f.f1_hz && f.f2_hz) EXPECT_LE(*f.f1_hz, *f.f2_hz);
    if (f.f2_hz && f.f3_hz) EXPECT_LE(*f.f2_hz, *f.f3_hz);
    all_defined += f.f1_hz && f.f2_hz && f.f3_hz;
  }
  EXPECT_GT(all_defined, 0);
}

TEST(VoiceQuality, AlternatingPeriodsGiveOracleJitter) {
  const std::size_t n = 2 * kRate;
  const PulseSpec s = Alternating(160.0, 163.2, 1.0, 1.0, n);
  const AudioClip c = Clip(PulseTrain(n, s.positions, s.amplitudes, 8.0));
  const FeatureConfig cfg;
  const VoiceQuality vq = JitterShimmer(c, F0Contour(c, cfg), cfg);
  ASSERT_TRUE(vq.jitter_local_pct);
  const double oracle = OracleJitterPct(s);
  EXPECT_NEAR(oracle, 1.98, 0.01);
  EXPECT_NEAR(*vq.jitter_local_pct, oracle, 0.15);
  EXPECT_NEAR(*vq.shimmer_local_pct, 0.0, 0.05);
}

TEST(VoiceQuality, AlternatingAmplitudesGiveOracleShimmer) {
  const std::size_t n = 2 * kRate;
  const PulseSpec s = Alternating(160.0, 160.0, 1.0, 0.9, n);
  const AudioClip c = Clip(PulseTrain(n, s.positions, s.amplitudes, 8.0));
  const FeatureConfig cfg;
  const VoiceQuality vq = JitterShimmer(c, F0Contour(c, cfg), cfg);
  ASSERT_TRUE(vq.shimmer_local_pct);
  const double oracle = OracleShimmerPct(s);
  EXPECT_NEAR(oracle, 10.53, 0.01);
  EXPECT_NEAR(*vq.shimmer_local_pct, oracle, 0.15);
  EXPECT_NEAR(*vq.jitter_local_pct, 0.0, 0.05);
}

TEST(VoiceQuality, PeriodicTrainHasNoPerturbation) {
  const std::size_t n = 2 * kRate;
  const PulseSpec s = Alternating(80.0, 80.0, 0.8, 0.8, n);
  const AudioClip c = Clip(PulseTrain(n, s.positions, s.amplitudes, 4.0));
  const FeatureConfig cfg;
  const VoiceQuality vq = JitterShimmer(c, F0Contour(c, cfg), cfg);
  ASSERT_TRUE(vq.jitter_local_pct && vq.shimmer_local_pct);
  EXPECT_NEAR(*vq.jitter_local_pct, 0.0, 0.05);
  EXPECT_NEAR(*vq.shimmer_local_pct, 0.0, 0.05);
}

TEST(VoiceQuality, FewerThanThreePeriodsIsUndefined) {
  const std::vector<PeriodMark> marks = {{0.00, 1.0, 0}, {0.01, 1.0, 0}, {0.02, 1.0, 0}};
  const VoiceQuality vq = VoiceQualityFromMarks(marks, FeatureConfig{});
  EXPECT_FALSE(vq.jitter_local_pct || vq.shimmer_local_pct);
}

TEST(VoiceQuality, PeriodsNeverPairAcrossRuns) {
  std::vector<PeriodMark> marks;
  for (int k = 0; k < 5; ++k) marks.push_back({0.01 * k, 1.0, 0});
  for (int k = 0; k < 5; ++k) marks.push_back({1.0 + 0.005 * k, 0.5, 1});
  const VoiceQuality vq = VoiceQualityFromMarks(marks, FeatureConfig{});
  ASSERT_TRUE(vq.jitter_local_pct && vq.shimmer_local_pct);
  EXPECT_NEAR(*vq.jitter_local_pct, 0.0, 1e-9);
  EXPECT_NEAR(*vq.shimmer_local_pct, 0.0, 1e-9);
}

TEST(Hnr, PureSineHitsTheCap) {
  const AudioClip c = Clip(Sine(200.0, 1.0, kRate));
  const FeatureConfig cfg;
  const Stat h = Hnr(c, F0Contour(c, cfg), cfg);
  ASSERT_TRUE(h);
  EXPECT_NEAR(*h, 40.0, 1e-9);
}

TEST(Hnr, SineInNoiseTracksConstructedSnr) {
  std::vector<float> x = Sine(200.0, 2.0, kRate, 0.5);
  const double signal_rms = Rms(x);
  std::vector<float> noise = WhiteNoise(x.size(), signal_rms / std::sqrt(10.0), 21);
  const double snr_db = 20.0 * std::log10(signal_rms / Rms(noise));
  AddInPlace(x, noise);
  const AudioClip c = Clip(x);
  const FeatureConfig cfg;
  const Stat h = Hnr(c, F0Contour(c, cfg), cfg);
  ASSERT_TRUE(h);
  EXPECT_NEAR(snr_db, 10.0, 0.2);
  EXPECT_GE(*h, 8.0);
  EXPECT_LE(*h, 12.0);
}

TEST(Hnr, NoiseOnlyIsUndefined) {
  const AudioClip c = Clip(WhiteNoise(kRate, 0.1, 4));
  const FeatureConfig cfg;
  EXPECT_FALSE(Hnr(c, F0Contour(c, cfg), cfg));
}

TEST(EnergySpectrum, KiloHertzSine) {
  const EnergySpectralProfile p =
      AnalyzeEnergySpectrum(Clip(Sine(1000.0, 1.0, kRate)), FeatureConfig{});
  ASSERT_TRUE(p.centroid_hz && p.zcr_mean);
  EXPECT_NEAR(*p.centroid_hz, 1000.0, 20.0);
  EXPECT_NEAR(*p.zcr_mean, 0.125, 0.005);
}

TEST(EnergySpectrum, WhiteNoiseCentroidIsQuarterRate) {
  const EnergySpectralProfile p =
      AnalyzeEnergySpectrum(Clip(WhiteNoise(2 * kRate, 0.1, 8)), FeatureConfig{});
  ASSERT_TRUE(p.centroid_hz);
  EXPECT_NEAR(*p.centroid_hz, kRate / 4.0, 0.1 * kRate / 4.0);
}

TEST(EnergySpectrum, ConstantSignal) {
  const EnergySpectralProfile p =
      AnalyzeEnergySpectrum(Clip(std::vector<float>(kRate, 0.5f)), FeatureConfig{});
  ASSERT_TRUE(p.rms_db_mean && p.flux_mean);
  EXPECT_NEAR(*p.rms_db_mean, 20.0 * std::log10(0.5), 1e-6);
  EXPECT_NEAR(*p.flux_mean, 0.0, 1e-9);
}

TEST(Pauses, HalfSecondGap) {
  const PauseStats p = DetectPauses(Clip(ToneGapTone(0.5)), FeatureConfig{});
  EXPECT_EQ(p.pause_count, 1);
  EXPECT_NEAR(p.pause_total_s, 0.5, 0.03);
}

TEST(Pauses, ShortGapIsNotAPause) {
  const PauseStats p = DetectPauses(Clip(ToneGapTone(0.15)), FeatureConfig{});
  EXPECT_EQ(p.pause_count, 0);
}

TEST(Pauses, ContinuousToneIsAllSpeech) {
  const PauseStats p = DetectPauses(Clip(Sine(200.0, 2.0, kRate)), FeatureConfig{});
  EXPECT_EQ(p.pause_count, 0);
  EXPECT_GE(p.speech_ratio, 0.95);
}

TEST(Pauses, LeadingAndTrailingSilenceAreNotPauses) {
  std::vector<float> x(kRate, 0.0f);
  const std::vector<float> tone = Sine(200.0, 1.0, kRate);
  x.insert(x.end(), tone.begin(), tone.end());
  x.resize(x.size() + kRate, 0.0f);
  const PauseStats p = DetectPauses(Clip(x), FeatureConfig{});
  EXPECT_EQ(p.pause_count, 0);
  EXPECT_NEAR(p.speech_ratio, 1.0 / 3.0, 0.02);
}

TEST(ExtractEvidence, SilenceLeavesVoiceFieldsUndefined) {
  const AcousticEvidence ev =
      ExtractEvidence(Clip(std::vector<float>(kRate, 0.0f)), FeatureConfig{});
  EXPECT_FALSE(ev.pitch_mean_hz || ev.pitch_std_hz || ev.pitch_min_hz || ev.pitch_max_hz);
  EXPECT_FALSE(ev.f1_mean_hz || ev.f2_mean_hz || ev.f3_mean_hz);
  EXPECT_FALSE(ev.jitter_local_pct || ev.shimmer_local_pct || ev.hnr_db);
  EXPECT_EQ(ev.pause_count, 0);
  EXPECT_EQ(ev.pause_total_s, 0.0);
  EXPECT_DOUBLE_EQ(ev.duration_s, 1.0);
}

TEST(ExtractEvidence, SineComposition) {
  const AcousticEvidence ev = ExtractEvidence(Clip(Sine(220.0, 2.0, kRate)), FeatureConfig{});
  ASSERT_TRUE(ev.pitch_mean_hz && ev.hnr_db);
  EXPECT_NEAR(*ev.pitch_mean_hz, 220.0, 2.0);
  EXPECT_GE(ev.voiced_ratio, 0.9);
  EXPECT_NEAR(*ev.hnr_db, 40.0, 1e-9);
}

TEST(ExtractEvidence, RepeatedCallsAreBitwiseIdentical) {
  std::vector<float> x = TwoResonatorSource(Resonator::Design(600.0, 90.0, kRate),
                                            Resonator::Design(1700.0, 120.0, kRate));
  AddInPlace(x, WhiteNoise(x.size(), 0.01, 2));
  const AudioClip c = Clip(x);
  EXPECT_EQ(ExtractEvidence(c, FeatureConfig{}), ExtractEvidence(c, FeatureConfig{}));
}

std::vector<double> Numeric(const AcousticEvidence& ev) {
  auto v = [](const Stat& s) { return s.value_or(-12345.0); };
  return {ev.duration_s, v(ev.pitch_mean_hz), v(ev.pitch_std_hz), v(ev.pitch_min_hz),
          v(ev.pitch_max_hz), ev.voiced_ratio, v(ev.f1_mean_hz), v(ev.f2_mean_hz),
          v(ev.f3_mean_hz), v(ev.jitter_local_pct), v(ev.shimmer_local_pct), v(ev.hnr_db),
          v(ev.rms_db_mean), v(ev.rms_db_std), v(ev.spectral_centroid_hz),
          v(ev.spectral_bandwidth_hz), v(ev.spectral_rolloff85_hz),
          v(ev.spectral_flux_mean), v(ev.zcr_mean), static_cast<double>(ev.pause_count),
          ev.pause_total_s, ev.speech_ratio};
}

TEST(ExtractEvidence, SerialAndParallelBackendsAgree) {
  FeatureConfig serial, parallel;
  serial.backend = kernels::Backend::kSerial;
  parallel.backend = kernels::Backend::kOpenMP;
  std::vector<float> x = ToneGapTone(0.3);
  AddInPlace(x, WhiteNoise(x.size(), 0.002, 6));
  const AudioClip c = Clip(x);
  const auto a = Numeric(ExtractEvidence(c, serial));
  const auto b = Numeric(ExtractEvidence(c, parallel));
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_NEAR(a[i], b[i], 1e-6 * std::max(1.0, std::fabs(a[i]))) << "field " << i;
  }
}

TEST(ExtractEvidence, BatchMatchesSingleClipCalls) {
  std::vector<AudioClip> clips;
  for (int k = 0; k < 5; ++k) {
    std::vector<float> x = Sine(100.0 + 40.0 * k, 0.7, kRate);
    AddInPlace(x, WhiteNoise(x.size(), 0.01, k));
    clips.push_back(Clip(x));
  }
  const FeatureConfig cfg;
  const auto batch = ExtractEvidenceBatch(clips, cfg);
  ASSERT_EQ(batch.size(), clips.size());
  for (std::size_t i = 0; i < clips.size(); ++i) {
    EXPECT_EQ(batch[i], ExtractEvidence(clips[i], cfg));
  }
}

// Random speech-like clips: voiced stretches through resonators, gaps and
// noise.
std::vector<float> RandomClip(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<float> x;
  const int segments = 1 + static_cast<int>(u(rng) * 4);
  for (int s = 0; s < segments; ++s) {
    const double dur = 0.1 + u(rng) * 0.6;
    std::vector<float> seg = ImpulseTrain(70.0 + u(rng) * 300.0, dur, kRate, 0.5);
    seg = Resonator::Design(300.0 + u(rng) * 600.0, 60.0 + u(rng) * 100.0, kRate).Apply(seg);
    seg = Resonator::Design(1000.0 + u(rng) * 1500.0, 80.0 + u(rng) * 150.0, kRate).Apply(seg);
    Normalize(seg, 0.05 + u(rng) * 0.9);
    x.insert(x.end(), seg.begin(), seg.end());
    x.resize(x.size() + static_cast<std::size_t>(u(rng) * 0.4 * kRate), 0.0f);
  }
  AddInPlace(x, WhiteNoise(x.size(), u(rng) * 0.02, rng()));
  return x;
}

TEST(ExtractEvidence, InvariantsHoldOnRandomClips) {
  std::mt19937_64 rng(99);
  const FeatureConfig cfg;
  for (int trial = 0; trial < 25; ++trial) {
    const AcousticEvidence ev = ExtractEvidence(Clip(RandomClip(rng)), cfg);
    if (ev.pitch_mean_hz) {
      EXPECT_LE(*ev.pitch_min_hz, *ev.pitch_mean_hz);
      EXPECT_LE(*ev.pitch_mean_hz, *ev.pitch_max_hz);
    } else {
      EXPECT_EQ(ev.voiced_ratio, 0.0);
    }
    if (ev.f1_mean_hz && ev.f2_mean_hz) EXPECT_LE(*ev.f1_mean_hz, *ev.f2_mean_hz);
    if (ev.f2_mean_hz && ev.f3_mean_hz) EXPECT_LE(*ev.f2_mean_hz, *ev.f3_mean_hz);
    if (ev.jitter_local_pct) EXPECT_GE(*ev.jitter_local_pct, 0.0);
    if (ev.shimmer_local_pct) EXPECT_GE(*ev.shimmer_local_pct, 0.0);
    for (double r : {ev.voiced_ratio, ev.speech_ratio, ev.zcr_mean.value_or(0.0)}) {
      EXPECT_GE(r, 0.0);
      EXPECT_LE(r, 1.0);
    }
    for (double v : Numeric(ev)) EXPECT_TRUE(std::isfinite(v));
  }
}

TEST(ExtractEvidence, GainChangesOnlyLevel) {
  std::mt19937_64 rng(3);
  std::vector<float> x = RandomClip(rng);
  Normalize(x, 0.9);
  const FeatureConfig cfg;
  const AcousticEvidence base = ExtractEvidence(Clip(x), cfg);
  for (double g : {0.5, 0.75}) {
    std::vector<float> y = x;
    for (auto& v : y) v = static_cast<float>(v * g);
    const AcousticEvidence ev = ExtractEvidence(Clip(y), cfg);
    auto near = [](const Stat& a, const Stat& b, double rel) {
      ASSERT_EQ(a.has_value(), b.has_value());
      if (a) EXPECT_NEAR(*a, *b, rel * std::fabs(*b) + 1e-9);
    };
    near(ev.pitch_mean_hz, base.pitch_mean_hz, 1e-3);
    near(ev.f1_mean_hz, base.f1_mean_hz, 1e-3);
    near(ev.jitter_local_pct, base.jitter_local_pct, 1e-2);
    near(ev.zcr_mean, base.zcr_mean, 1e-3);
    near(ev.spectral_centroid_hz, base.spectral_centroid_hz, 1e-3);
    ASSERT_TRUE(ev.rms_db_mean && base.rms_db_mean);
    EXPECT_NEAR(*ev.rms_db_mean - *base.rms_db_mean, 20.0 * std::log10(g), 0.1);
  }
}

TEST(ExtractEvidence, LeadingSilenceBarelyMovesMeans) {
  std::vector<float> x = TwoResonatorSource(Resonator::Design(650.0, 80.0, kRate),
                                            Resonator::Design(1400.0, 100.0, kRate));
  std::vector<float> shifted(kRate / 10, 0.0f);
  shifted.insert(shifted.end(), x.begin(), x.end());
  const FeatureConfig cfg;
  const AcousticEvidence a = ExtractEvidence(Clip(x), cfg);
  const AcousticEvidence b = ExtractEvidence(Clip(shifted), cfg);
  for (auto field : {&AcousticEvidence::pitch_mean_hz, &AcousticEvidence::spectral_centroid_hz,
                     &AcousticEvidence::spectral_bandwidth_hz,
                     &AcousticEvidence::spectral_rolloff85_hz}) {
    ASSERT_TRUE((a.*field).has_value() && (b.*field).has_value());
    EXPECT_NEAR(*(b.*field), *(a.*field), 0.02 * std::fabs(*(a.*field)));
  }
}

}  // namespace
}  // namespace forensa
