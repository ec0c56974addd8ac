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

#include "forensa/audio_io.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <stdexcept>

namespace forensa {

namespace {

std::string KindName(AudioErrorKind kind) {
  switch (kind) {
    case AudioErrorKind::kUnreadable: return "unreadable file";
    case AudioErrorKind::kUnsupportedCodec: return "unsupported codec";
    case AudioErrorKind::kZeroLength: return "zero-length audio";
  }
  return "audio error";
}

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatFloat = 3;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

std::uint16_t ReadU16(const std::uint8_t* p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

std::uint32_t ReadU32(const std::uint8_t* p) {
  return static_cast<std::uint32_t>(p[0]) |
         (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) |
         (static_cast<std::uint32_t>(p[3]) << 24);
}

void PutU16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v & 0xFF));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void PutU32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void PutTag(std::vector<std::uint8_t>& out, const char* tag) {
  out.insert(out.end(), tag, tag + 4);
}

struct WavFormat {
  std::uint16_t tag = 0;
  std::uint16_t channels = 0;
  std::uint32_t sample_rate = 0;
  std::uint16_t block_align = 0;
  std::uint16_t bits = 0;
};

}  // namespace

AudioError::AudioError(AudioErrorKind kind, const std::string& path,
                       const std::string& detail)
    : DataError(KindName(kind) + ": " + path +
                (detail.empty() ? "" : " (" + detail + ")")),
      kind_(kind),
      path_(path) {}

AudioClip::AudioClip(std::string utt_id, std::vector<float> samples,
                     int sample_rate, ManifestEntry meta,
                     std::optional<double> clipping_ratio)
    : utt_id_(std::move(utt_id)),
      samples_(std::move(samples)),
      sample_rate_(sample_rate),
      meta_(std::move(meta)) {
  if (sample_rate_ <= 0) throw DataError("sample rate must be positive");
  if (samples_.empty()) throw DataError("audio clip " + utt_id_ + " is empty");
  std::size_t clamped = 0;
  for (float& s : samples_) {
    if (!std::isfinite(s)) {
      throw DataError("audio clip " + utt_id_ + " has non-finite samples");
    }
    if (s > 1.0f || s < -1.0f) {
      s = std::clamp(s, -1.0f, 1.0f);
      ++clamped;
    }
  }
  clipping_ratio_ = clipping_ratio.value_or(static_cast<double>(clamped) /
                                            static_cast<double>(samples_.size()));
}

AudioClip DecodeWav(std::span<const std::uint8_t> bytes,
                    const std::string& source, const ManifestEntry& entry) {
  if (bytes.size() >= 4 && std::memcmp(bytes.data(), "fLaC", 4) == 0) {
    throw AudioError(AudioErrorKind::kUnsupportedCodec, source,
                     "FLAC support is not built in");
  }
  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0) {
    throw AudioError(AudioErrorKind::kUnreadable, source, "not a RIFF/WAVE file");
  }

  std::optional<WavFormat> fmt;
  std::span<const std::uint8_t> data;
  bool have_data = false;
  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const std::uint8_t* chunk = bytes.data() + pos;
    const std::uint32_t size = ReadU32(chunk + 4);
    const std::size_t body = pos + 8;
    const std::size_t avail = std::min<std::size_t>(size, bytes.size() - body);
    if (std::memcmp(chunk, "fmt ", 4) == 0) {
      if (avail < 16) {
        throw AudioError(AudioErrorKind::kUnreadable, source, "short fmt chunk");
      }
      const std::uint8_t* f = bytes.data() + body;
      WavFormat w;
      w.tag = ReadU16(f);
      w.channels = ReadU16(f + 2);
      w.sample_rate = ReadU32(f + 4);
      w.block_align = ReadU16(f + 12);
      w.bits = ReadU16(f + 14);
      if (w.tag == kFormatExtensible) {
        if (avail < 26) {
          throw AudioError(AudioErrorKind::kUnreadable, source,
                           "short extensible fmt chunk");
        }
        w.tag = ReadU16(f + 24);  // first two bytes of the subformat GUID
      }
      fmt = w;
    } else if (std::memcmp(chunk, "data", 4) == 0) {
      data = bytes.subspan(body, avail);
      have_data = true;
    }
    pos = body + size + (size & 1u);
  }
  if (!fmt || !have_data) {
    throw AudioError(AudioErrorKind::kUnreadable, source,
                     "missing fmt or data chunk");
  }
  const bool int_ok = fmt->tag == kFormatPcm &&
                      (fmt->bits == 16 || fmt->bits == 24 || fmt->bits == 32);
  const bool float_ok = fmt->tag == kFormatFloat && fmt->bits == 32;
  if (!int_ok && !float_ok) {
    throw AudioError(AudioErrorKind::kUnsupportedCodec, source,
                     "format tag " + std::to_string(fmt->tag) + ", " +
                         std::to_string(fmt->bits) + " bits");
  }
  const std::size_t bytes_per_sample = fmt->bits / 8;
  if (fmt->channels == 0 || fmt->sample_rate == 0 ||
      fmt->block_align != fmt->channels * bytes_per_sample) {
    throw AudioError(AudioErrorKind::kUnreadable, source, "inconsistent fmt chunk");
  }
  const std::size_t n_frames = data.size() / fmt->block_align;
  if (n_frames == 0) {
    throw AudioError(AudioErrorKind::kZeroLength, source, "");
  }

  std::vector<float> mono(n_frames);
  std::size_t clipped = 0;
  for (std::size_t i = 0; i < n_frames; ++i) {
    double acc = 0.0;
    bool saturated = false;
    for (std::size_t c = 0; c < fmt->channels; ++c) {
      const std::uint8_t* p = data.data() + i * fmt->block_align + c * bytes_per_sample;
      double v = 0.0;
      if (float_ok) {
        float f;
        std::memcpy(&f, p, 4);
        if (!std::isfinite(f)) {
          throw AudioError(AudioErrorKind::kUnreadable, source, "non-finite sample");
        }
        v = f;
        if (std::abs(v) > 1.0) {
          saturated = true;
          v = std::clamp(v, -1.0, 1.0);
        }
      } else if (fmt->bits == 16) {
        const auto s = static_cast<std::int16_t>(ReadU16(p));
        saturated |= s == INT16_MAX || s == INT16_MIN;
        v = s / 32768.0;
      } else if (fmt->bits == 24) {
        std::int32_t s = p[0] | (p[1] << 8) | (p[2] << 16);
        if (s & 0x800000) s -= 0x1000000;
        saturated |= s == 0x7FFFFF || s == -0x800000;
        v = s / 8388608.0;
      } else {
        const auto s = static_cast<std::int32_t>(ReadU32(p));
        saturated |= s == INT32_MAX || s == INT32_MIN;
        v = s / 2147483648.0;
      }
      acc += v;
    }
    mono[i] = static_cast<float>(acc / fmt->channels);
    if (saturated) ++clipped;
  }
  return AudioClip(entry.utt_id, std::move(mono),
                   static_cast<int>(fmt->sample_rate), entry,
                   static_cast<double>(clipped) / static_cast<double>(n_frames));
}

AudioClip LoadClip(const std::filesystem::path& path,
                   const ManifestEntry& entry) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw AudioError(AudioErrorKind::kUnreadable, path.string(), "cannot open");
  }
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  return DecodeWav(bytes, path.string(), entry);
}

std::vector<std::uint8_t> EncodeWav(
    const std::vector<std::vector<float>>& channels, int sample_rate,
    WavSampleFormat format) {
  if (channels.empty()) throw std::invalid_argument("no channels to encode");
  const std::size_t n = channels[0].size();
  for (const auto& ch : channels) {
    if (ch.size() != n) throw std::invalid_argument("ragged channel buffers");
  }
  const std::uint16_t bits = format == WavSampleFormat::kPcm16   ? 16
                             : format == WavSampleFormat::kPcm24 ? 24
                                                                 : 32;
  const auto n_ch = static_cast<std::uint16_t>(channels.size());
  const std::uint16_t block = n_ch * (bits / 8);
  const auto data_bytes = static_cast<std::uint32_t>(n * block);

  std::vector<std::uint8_t> out;
  out.reserve(44 + data_bytes);
  PutTag(out, "RIFF");
  PutU32(out, 36 + data_bytes);
  PutTag(out, "WAVE");
  PutTag(out, "fmt ");
  PutU32(out, 16);
  PutU16(out, format == WavSampleFormat::kFloat32 ? kFormatFloat : kFormatPcm);
  PutU16(out, n_ch);
  PutU32(out, static_cast<std::uint32_t>(sample_rate));
  PutU32(out, static_cast<std::uint32_t>(sample_rate) * block);
  PutU16(out, block);
  PutU16(out, bits);
  PutTag(out, "data");
  PutU32(out, data_bytes);
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& ch : channels) {
      const double v = std::clamp(static_cast<double>(ch[i]), -1.0, 1.0);
      switch (format) {
        case WavSampleFormat::kPcm16:
          PutU16(out, static_cast<std::uint16_t>(static_cast<std::int16_t>(
                          std::clamp<long>(std::lround(v * 32768.0), -32768, 32767))));
          break;
        case WavSampleFormat::kPcm24: {
          const auto s = static_cast<std::int32_t>(
              std::clamp<long>(std::lround(v * 8388608.0), -8388608, 8388607));
          for (int b = 0; b < 3; ++b) out.push_back(static_cast<std::uint8_t>(s >> (8 * b)));
          break;
        }
        case WavSampleFormat::kPcm32:
          PutU32(out, static_cast<std::uint32_t>(
                          static_cast<std::int32_t>(std::clamp<long long>(
                          std::llround(v * 2147483648.0), INT32_MIN, INT32_MAX))));
          break;
        case WavSampleFormat::kFloat32: {
          // Float output keeps the unclamped value.
          const float f = ch[i];
          std::uint32_t raw;
          std::memcpy(&raw, &f, 4);
          PutU32(out, raw);
          break;
        }
      }
    }
  }
  return out;
}

void WriteWav(const std::filesystem::path& path, std::span<const float> mono,
              int sample_rate, WavSampleFormat format) {
  const auto bytes =
      EncodeWav({std::vector<float>(mono.begin(), mono.end())}, sample_rate, format);
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
}

AudioClip Resample(const AudioClip& clip, int target_rate,
                   kernels::Backend backend) {
  if (target_rate <= 0) throw std::invalid_argument("target rate must be positive");
  if (clip.sample_rate() == target_rate) return clip;
  const auto kernel = kernels::DesignResampleKernel(clip.sample_rate(), target_rate);
  std::vector<float> out(kernels::ResampledLength(clip.size(), kernel));
  kernels::Resample(backend, kernel, clip.samples(), out);
  // Ringing past full scale is clamped silently; the clipping ratio describes
  // the decoded source.
  for (float& s : out) s = std::clamp(s, -1.0f, 1.0f);
  return AudioClip(clip.utt_id(), std::move(out), target_rate, clip.meta(),
                   clip.clipping_ratio());
}

std::size_t MsToSamples(double ms, int sample_rate) {
  return static_cast<std::size_t>(std::lround(ms * sample_rate / 1000.0));
}

FrameMatrix FrameSignal(const AudioClip& clip, double frame_ms, double hop_ms,
                        kernels::Window window) {
  if (!(hop_ms > 0.0) || frame_ms < hop_ms) {
    throw std::invalid_argument("framing requires frame_ms >= hop_ms > 0");
  }
  const std::size_t frame = MsToSamples(frame_ms, clip.sample_rate());
  const std::size_t hop = std::max<std::size_t>(1, MsToSamples(hop_ms, clip.sample_rate()));
  FrameMatrix m;
  m.grid = kernels::MakeFrameGrid(clip.size(), frame, hop, window);
  const std::vector<double> w = kernels::MakeWindow(window, frame);
  m.data.resize(m.grid.n_frames * frame);
  const auto x = clip.samples();
  for (std::size_t i = 0; i < m.grid.n_frames; ++i) {
    for (std::size_t j = 0; j < frame; ++j) {
      m.data[i * frame + j] = x[m.grid.start(i) + j] * w[j];
    }
  }
  return m;
}

}  // namespace forensa
