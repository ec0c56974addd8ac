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

// Decoding, resampling and framing of audio into the canonical in-memory
// representation consumed by the feature extractors.

#ifndef FORENSA_AUDIO_IO_H_
#define FORENSA_AUDIO_IO_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "forensa/error.h"
#include "forensa/kernels.h"
#include "forensa/manifest.h"

namespace forensa {

inline constexpr int kCanonicalSampleRate = 16000;

enum class AudioErrorKind { kUnreadable, kUnsupportedCodec, kZeroLength };

class AudioError : public DataError {
 public:
  AudioError(AudioErrorKind kind, const std::string& path,
             const std::string& detail);
  AudioErrorKind kind() const { return kind_; }
  const std::string& path() const { return path_; }

 private:
  AudioErrorKind kind_;
  std::string path_;
};

// Mono waveform with amplitudes in [-1, 1]. Immutable once built.
class AudioClip {
 public:
  // Samples outside [-1, 1] are clamped. With no explicit ratio the
  // clipping ratio is the fraction of clamped samples. Throws DataError on
  // empty or non-finite input or a non-positive rate.
  AudioClip(std::string utt_id, std::vector<float> samples, int sample_rate,
            ManifestEntry meta = {},
            std::optional<double> clipping_ratio = std::nullopt);

  const std::string& utt_id() const { return utt_id_; }
  std::span<const float> samples() const { return samples_; }
  int sample_rate() const { return sample_rate_; }
  std::size_t size() const { return samples_.size(); }
  double duration_s() const {
    return static_cast<double>(samples_.size()) / sample_rate_;
  }
  double clipping_ratio() const { return clipping_ratio_; }
  const ManifestEntry& meta() const { return meta_; }

 private:
  std::string utt_id_;
  std::vector<float> samples_;
  int sample_rate_;
  double clipping_ratio_ = 0.0;
  ManifestEntry meta_;
};

enum class WavSampleFormat { kPcm16, kPcm24, kPcm32, kFloat32 };

// Decodes a RIFF/WAVE byte buffer. Multi-channel audio is downmixed by
// channel mean; saturated integer codes and float samples beyond full scale
// count towards the clipping ratio.
AudioClip DecodeWav(std::span<const std::uint8_t> bytes,
                    const std::string& source, const ManifestEntry& entry);

AudioClip LoadClip(const std::filesystem::path& path,
                   const ManifestEntry& entry);

// `channels` holds one equally sized buffer per channel.
std::vector<std::uint8_t> EncodeWav(
    const std::vector<std::vector<float>>& channels, int sample_rate,
    WavSampleFormat format);
void WriteWav(const std::filesystem::path& path, std::span<const float> mono,
              int sample_rate,
              WavSampleFormat format = WavSampleFormat::kPcm16);

// Band-limited (Kaiser-windowed sinc, polyphase) sample-rate conversion.
// Returns the input unchanged when the rates already match.
AudioClip Resample(const AudioClip& clip, int target_rate,
                   kernels::Backend backend = kernels::Backend::kOpenMP);

struct FrameMatrix {
  kernels::FrameGrid grid;
  std::vector<double> data;  // row-major, n_frames x frame_len_samples

  std::span<const double> frame(std::size_t i) const {
    return std::span<const double>(data).subspan(
        i * grid.frame_len_samples, grid.frame_len_samples);
  }
};

std::size_t MsToSamples(double ms, int sample_rate);

// Throws std::invalid_argument unless frame_ms >= hop_ms > 0. A clip shorter
// than one frame yields an empty grid.
FrameMatrix FrameSignal(const AudioClip& clip, double frame_ms, double hop_ms,
                        kernels::Window window);

}  // namespace forensa

#endif  // FORENSA_AUDIO_IO_H_
