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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>

namespace forensa {

namespace {

kernels::PitchParams MakePitchParams(int rate, const FeatureConfig& cfg) {
  kernels::PitchParams p;
  p.sample_rate = rate;
  p.f0_min_hz = cfg.f0_min_hz;
  p.f0_max_hz = cfg.f0_max_hz;
  p.threshold = cfg.yin_threshold;
  p.voicing_floor_db = cfg.voicing_floor_db;
  return p;
}

int LpcOrder(int rate, const FeatureConfig& cfg) {
  if (cfg.lpc_order > 0) return cfg.lpc_order;
  return 2 + static_cast<int>(std::lround(rate / 1000.0));
}

struct MeanStd {
  double mean = 0.0;
  double std = 0.0;
};

MeanStd MeanAndStd(std::span<const double> v) {
  MeanStd out;
  if (v.empty()) return out;
  out.mean = std::accumulate(v.begin(), v.end(), 0.0) / v.size();
  double acc = 0.0;
  for (double x : v) acc += (x - out.mean) * (x - out.mean);
  out.std = std::sqrt(acc / v.size());
  return out;
}

Stat MeanOf(const std::vector<double>& v) {
  if (v.empty()) return std::nullopt;
  return std::accumulate(v.begin(), v.end(), 0.0) / v.size();
}

std::vector<kernels::SpectralFrame> ComputeSpectralFrames(
    const AudioClip& clip, const FeatureConfig& cfg) {
  const auto grid = AnalysisGrid(clip, cfg);
  std::vector<kernels::SpectralFrame> frames(grid.n_frames);
  kernels::SpectralFrames(cfg.backend, clip.samples(), grid, clip.sample_rate(),
                          frames);
  return frames;
}

EnergySpectralProfile SummarizeSpectrum(
    std::span<const kernels::SpectralFrame> frames) {
  EnergySpectralProfile out;
  if (frames.empty()) return out;
  std::vector<double> rms, centroid, bandwidth, rolloff, flux, zcr;
  for (std::size_t i = 0; i < frames.size(); ++i) {
    const auto& f = frames[i];
    rms.push_back(f.rms_db);
    zcr.push_back(f.zcr);
    if (f.has_power) {
      centroid.push_back(f.centroid_hz);
      bandwidth.push_back(f.bandwidth_hz);
      rolloff.push_back(f.rolloff_hz);
      if (i > 0 && frames[i - 1].has_power) {
        flux.push_back(kernels::SpectralFlux(frames[i - 1], f));
      }
    }
  }
  const MeanStd r = MeanAndStd(rms);
  out.rms_db_mean = r.mean;
  out.rms_db_std = r.std;
  out.centroid_hz = MeanOf(centroid);
  out.bandwidth_hz = MeanOf(bandwidth);
  out.rolloff85_hz = MeanOf(rolloff);
  out.flux_mean = MeanOf(flux);
  out.zcr_mean = MeanOf(zcr);
  return out;
}

PauseStats SummarizePauses(std::span<const kernels::SpectralFrame> frames,
                           const kernels::FrameGrid& grid, int rate,
                           const FeatureConfig& cfg) {
  PauseStats out;
  const std::size_t n = frames.size();
  if (n == 0) return out;

  std::vector<double> loud;
  for (const auto& f : frames) {
    if (f.rms_db > cfg.vad_floor_db) loud.push_back(f.rms_db);
  }
  if (loud.empty()) return out;
  const auto mid = loud.begin() + loud.size() / 2;
  std::nth_element(loud.begin(), mid, loud.end());
  double median = *mid;
  if (loud.size() % 2 == 0) {
    median = 0.5 * (median + *std::max_element(loud.begin(), mid));
  }
  const double threshold = std::max(cfg.vad_floor_db, median - cfg.vad_relative_db);

  std::vector<std::uint8_t> speech(n);
  std::size_t speech_frames = 0;
  for (std::size_t i = 0; i < n; ++i) {
    speech[i] = frames[i].rms_db > threshold;
    speech_frames += speech[i];
  }
  out.speech_ratio = static_cast<double>(speech_frames) / n;

  const double min_pause_s = cfg.min_pause_ms / 1000.0;
  std::size_t i = 0;
  while (i < n && !speech[i]) ++i;  // leading silence
  while (i < n) {
    if (speech[i]) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < n && !speech[j]) ++j;
    if (j == n) break;  // trailing silence
    // Span covered by the union of the run's frames.
    const std::size_t k = j - i;
    const double span_s =
        static_cast<double>((k - 1) * grid.hop_samples + grid.frame_len_samples) /
        rate;
    if (span_s >= min_pause_s) {
      ++out.pause_count;
      out.pause_total_s += span_s;
    }
    i = j;
  }
  return out;
}

// Sub-sample peak of x around index i.
void RefinePeak(std::span<const float> x, std::size_t i, double& pos,
                double& value) {
  pos = static_cast<double>(i);
  value = x[i];
  if (i == 0 || i + 1 >= x.size()) return;
  const double a = x[i - 1], b = x[i], c = x[i + 1];
  const double denom = a - 2.0 * b + c;
  if (denom >= 0.0) return;
  const double shift = std::clamp(0.5 * (a - c) / denom, -0.5, 0.5);
  pos += shift;
  value = b - 0.25 * (a - c) * shift;
}

}  // namespace

nlohmann::json FeatureConfig::ToJson() const {
  return {
      {"frame_ms", frame_ms},
      {"hop_ms", hop_ms},
      {"f0_min_hz", f0_min_hz},
      {"f0_max_hz", f0_max_hz},
      {"yin_threshold", yin_threshold},
      {"voicing_floor_db", voicing_floor_db},
      {"lpc_order", lpc_order},
      {"preemphasis", preemphasis},
      {"formant_max_bandwidth_hz", formant_max_bandwidth_hz},
      {"formant_min_freq_hz", formant_min_freq_hz},
      {"period_factor", period_factor},
      {"hnr_min_db", hnr_min_db},
      {"hnr_max_db", hnr_max_db},
      {"vad_floor_db", vad_floor_db},
      {"vad_relative_db", vad_relative_db},
      {"min_pause_ms", min_pause_ms},
  };
}

FeatureConfig FeatureConfig::FromJson(const nlohmann::json& j) {
  FeatureConfig c;
  c.frame_ms = j.value("frame_ms", c.frame_ms);
  c.hop_ms = j.value("hop_ms", c.hop_ms);
  c.f0_min_hz = j.value("f0_min_hz", c.f0_min_hz);
  c.f0_max_hz = j.value("f0_max_hz", c.f0_max_hz);
  c.yin_threshold = j.value("yin_threshold", c.yin_threshold);
  c.voicing_floor_db = j.value("voicing_floor_db", c.voicing_floor_db);
  c.lpc_order = j.value("lpc_order", c.lpc_order);
  c.preemphasis = j.value("preemphasis", c.preemphasis);
  c.formant_max_bandwidth_hz =
      j.value("formant_max_bandwidth_hz", c.formant_max_bandwidth_hz);
  c.formant_min_freq_hz = j.value("formant_min_freq_hz", c.formant_min_freq_hz);
  c.period_factor = j.value("period_factor", c.period_factor);
  c.hnr_min_db = j.value("hnr_min_db", c.hnr_min_db);
  c.hnr_max_db = j.value("hnr_max_db", c.hnr_max_db);
  c.vad_floor_db = j.value("vad_floor_db", c.vad_floor_db);
  c.vad_relative_db = j.value("vad_relative_db", c.vad_relative_db);
  c.min_pause_ms = j.value("min_pause_ms", c.min_pause_ms);
  return c;
}

std::size_t PitchTrack::voiced_count() const {
  return static_cast<std::size_t>(std::count(voiced.begin(), voiced.end(), 1));
}

kernels::FrameGrid AnalysisGrid(const AudioClip& clip, const FeatureConfig& cfg) {
  const std::size_t frame = MsToSamples(cfg.frame_ms, clip.sample_rate());
  const std::size_t hop =
      std::max<std::size_t>(1, MsToSamples(cfg.hop_ms, clip.sample_rate()));
  return kernels::MakeFrameGrid(clip.size(), frame, hop,
                                kernels::Window::kRectangular);
}

PitchTrack F0Contour(const AudioClip& clip, const FeatureConfig& cfg) {
  PitchTrack track;
  track.grid = AnalysisGrid(clip, cfg);
  track.sample_rate = clip.sample_rate();
  std::vector<kernels::PitchFrame> frames(track.grid.n_frames);
  kernels::PitchFrames(cfg.backend, clip.samples(), track.grid,
                       MakePitchParams(clip.sample_rate(), cfg), frames);
  track.f0_hz.reserve(frames.size());
  for (const auto& f : frames) {
    track.f0_hz.push_back(f.voiced ? f.f0_hz : 0.0);
    track.voiced.push_back(f.voiced ? 1 : 0);
    track.periodicity.push_back(f.voiced ? f.periodicity : 0.0);
  }
  return track;
}

PitchStats SummarizePitch(const PitchTrack& track) {
  PitchStats s;
  std::vector<double> f0;
  for (std::size_t i = 0; i < track.f0_hz.size(); ++i) {
    if (track.voiced[i]) f0.push_back(track.f0_hz[i]);
  }
  if (!track.f0_hz.empty()) {
    s.voiced_ratio = static_cast<double>(f0.size()) / track.f0_hz.size();
  }
  if (f0.empty()) return s;
  const MeanStd ms = MeanAndStd(f0);
  s.mean_hz = ms.mean;
  s.std_hz = ms.std;
  s.min_hz = *std::min_element(f0.begin(), f0.end());
  s.max_hz = *std::max_element(f0.begin(), f0.end());
  return s;
}

FormantMeans EstimateFormants(const AudioClip& clip, const PitchTrack& pitch,
                              const FeatureConfig& cfg) {
  FormantMeans out;
  if (pitch.voiced_count() == 0) return out;
  kernels::FormantParams p;
  p.sample_rate = clip.sample_rate();
  p.lpc_order = LpcOrder(clip.sample_rate(), cfg);
  p.preemphasis = cfg.preemphasis;
  p.max_bandwidth_hz = cfg.formant_max_bandwidth_hz;
  p.min_freq_hz = cfg.formant_min_freq_hz;
  std::vector<kernels::FormantFrame> frames(pitch.grid.n_frames);
  kernels::FormantFrames(cfg.backend, clip.samples(), pitch.grid, pitch.voiced,
                         p, frames);

  int depth = 0;
  for (const auto& f : frames) depth = std::max(depth, f.count);
  if (depth == 0) return out;
  std::array<double, 3> sum{};
  std::size_t used = 0;
  for (const auto& f : frames) {
    if (f.count < depth) continue;
    for (int k = 0; k < depth; ++k) sum[k] += f.hz[k];
    ++used;
  }
  Stat* slots[3] = {&out.f1_hz, &out.f2_hz, &out.f3_hz};
  for (int k = 0; k < depth; ++k) *slots[k] = sum[k] / used;
  return out;
}

std::vector<PeriodMark> FindPeriodMarks(const AudioClip& clip,
                                        const PitchTrack& pitch) {
  std::vector<PeriodMark> marks;
  const auto x = clip.samples();
  const auto& g = pitch.grid;
  const double rate = clip.sample_rate();
  int run_index = 0;
  std::size_t a = 0;
  while (a < g.n_frames) {
    if (!pitch.voiced[a]) {
      ++a;
      continue;
    }
    std::size_t b = a;
    while (b + 1 < g.n_frames && pitch.voiced[b + 1]) ++b;
    const std::size_t lo = g.start(a);
    const std::size_t hi = std::min(x.size(), g.start(b) + g.frame_len_samples);
    auto local_period = [&](double pos) {
      const double center = pos - 0.5 * g.frame_len_samples;
      const long idx = std::lround(center / static_cast<double>(g.hop_samples));
      const auto f = static_cast<std::size_t>(
          std::clamp<long>(idx, static_cast<long>(a), static_cast<long>(b)));
      return rate / pitch.f0_hz[f];
    };
    auto argmax = [&](std::size_t from, std::size_t to) {
      std::size_t best = from;
      for (std::size_t i = from; i < to; ++i) {
        if (x[i] > x[best]) best = i;
      }
      return best;
    };

    const double first_period = local_period(static_cast<double>(lo));
    std::size_t peak = argmax(
        lo, std::min(hi, lo + static_cast<std::size_t>(std::ceil(first_period))));
    // A run may open on the decaying tail of a pulse; climb to its peak.
    while (peak + 1 < hi && x[peak + 1] > x[peak]) ++peak;
    double pos, value;
    RefinePeak(x, peak, pos, value);
    marks.push_back({pos / rate, value, run_index});
    while (true) {
      const double period = local_period(pos);
      const auto from = static_cast<std::size_t>(std::ceil(pos + 0.8 * period));
      const auto to = static_cast<std::size_t>(std::floor(pos + 1.2 * period)) + 1;
      if (to > hi || from >= to) break;
      peak = argmax(from, to);
      RefinePeak(x, peak, pos, value);
      marks.push_back({pos / rate, value, run_index});
    }
    ++run_index;
    a = b + 1;
  }
  return marks;
}

VoiceQuality VoiceQualityFromMarks(std::span<const PeriodMark> marks,
                                   const FeatureConfig& cfg) {
  VoiceQuality out;
  const double min_period = 1.0 / cfg.f0_max_hz;
  const double max_period = 1.0 / cfg.f0_min_hz;
  std::vector<double> periods;
  std::vector<double> period_diffs, amps, amp_diffs;
  for (std::size_t i = 0; i + 1 < marks.size(); ++i) {
    if (marks[i].run != marks[i + 1].run) continue;
    const double t = marks[i + 1].position_s - marks[i].position_s;
    if (t < min_period || t > max_period) continue;
    periods.push_back(t);
    amps.push_back(std::abs(marks[i].amplitude));
    // Adjacent valid period within the same run.
    if (i + 2 < marks.size() && marks[i + 2].run == marks[i].run) {
      const double next = marks[i + 2].position_s - marks[i + 1].position_s;
      if (next >= min_period && next <= max_period &&
          std::max(t, next) / std::min(t, next) <= cfg.period_factor) {
        period_diffs.push_back(std::abs(next - t));
        amp_diffs.push_back(
            std::abs(std::abs(marks[i + 1].amplitude) - std::abs(marks[i].amplitude)));
      }
    }
  }
  if (periods.size() < 3 || period_diffs.empty()) return out;
  const double mean_t = std::accumulate(periods.begin(), periods.end(), 0.0) / periods.size();
  const double mean_a = std::accumulate(amps.begin(), amps.end(), 0.0) / amps.size();
  out.jitter_local_pct = 100.0 *
      (std::accumulate(period_diffs.begin(), period_diffs.end(), 0.0) /
       period_diffs.size()) / mean_t;
  if (mean_a > 0.0) {
    out.shimmer_local_pct = 100.0 *
        (std::accumulate(amp_diffs.begin(), amp_diffs.end(), 0.0) /
         amp_diffs.size()) / mean_a;
  }
  return out;
}

VoiceQuality JitterShimmer(const AudioClip& clip, const PitchTrack& pitch,
                           const FeatureConfig& cfg) {
  const auto marks = FindPeriodMarks(clip, pitch);
  return VoiceQualityFromMarks(marks, cfg);
}

Stat Hnr(const AudioClip& clip, const PitchTrack& pitch, const FeatureConfig& cfg) {
  (void)clip;
  std::vector<double> per_frame;
  for (std::size_t i = 0; i < pitch.voiced.size(); ++i) {
    if (!pitch.voiced[i]) continue;
    const double r = std::clamp(pitch.periodicity[i], 1e-6, 1.0 - 1e-6);
    const double db = 10.0 * std::log10(r / (1.0 - r));
    per_frame.push_back(std::clamp(db, cfg.hnr_min_db, cfg.hnr_max_db));
  }
  return MeanOf(per_frame);
}

EnergySpectralProfile AnalyzeEnergySpectrum(const AudioClip& clip,
                                            const FeatureConfig& cfg) {
  return SummarizeSpectrum(ComputeSpectralFrames(clip, cfg));
}

PauseStats DetectPauses(const AudioClip& clip, const FeatureConfig& cfg) {
  return SummarizePauses(ComputeSpectralFrames(clip, cfg), AnalysisGrid(clip, cfg),
                         clip.sample_rate(), cfg);
}

AcousticEvidence ExtractEvidence(const AudioClip& clip, const FeatureConfig& cfg) {
  AcousticEvidence ev;
  ev.duration_s = clip.duration_s();

  const PitchTrack pitch = F0Contour(clip, cfg);
  const PitchStats ps = SummarizePitch(pitch);
  ev.pitch_mean_hz = ps.mean_hz;
  ev.pitch_std_hz = ps.std_hz;
  ev.pitch_min_hz = ps.min_hz;
  ev.pitch_max_hz = ps.max_hz;
  ev.voiced_ratio = ps.voiced_ratio;

  const FormantMeans fm = EstimateFormants(clip, pitch, cfg);
  ev.f1_mean_hz = fm.f1_hz;
  ev.f2_mean_hz = fm.f2_hz;
  ev.f3_mean_hz = fm.f3_hz;

  const VoiceQuality vq = JitterShimmer(clip, pitch, cfg);
  ev.jitter_local_pct = vq.jitter_local_pct;
  ev.shimmer_local_pct = vq.shimmer_local_pct;
  ev.hnr_db = Hnr(clip, pitch, cfg);

  const auto frames = ComputeSpectralFrames(clip, cfg);
  const EnergySpectralProfile es = SummarizeSpectrum(frames);
  ev.rms_db_mean = es.rms_db_mean;
  ev.rms_db_std = es.rms_db_std;
  ev.spectral_centroid_hz = es.centroid_hz;
  ev.spectral_bandwidth_hz = es.bandwidth_hz;
  ev.spectral_rolloff85_hz = es.rolloff85_hz;
  ev.spectral_flux_mean = es.flux_mean;
  ev.zcr_mean = es.zcr_mean;

  const PauseStats pz = SummarizePauses(frames, pitch.grid, clip.sample_rate(), cfg);
  ev.pause_count = pz.pause_count;
  ev.pause_total_s = pz.pause_total_s;
  ev.speech_ratio = pz.speech_ratio;
  return ev;
}

std::vector<AcousticEvidence> ExtractEvidenceBatch(std::span<const AudioClip> clips,
                                                   const FeatureConfig& cfg) {
  std::vector<AcousticEvidence> out(clips.size());
  const auto n = static_cast<std::int64_t>(clips.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < n; ++i) {
    out[i] = ExtractEvidence(clips[i], cfg);
  }
  return out;
}

}  // namespace forensa
