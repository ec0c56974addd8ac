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

#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <cstring>
#include <fstream>
#include <random>

#include "test_signals.h"

namespace forensa {
namespace {

using testing::Sine;
using testing::TempDir;

void PutU16(std::vector<std::uint8_t>& b, std::uint16_t v) {
  b.push_back(v & 0xFF);
  b.push_back(v >> 8);
}

void PutU32(std::vector<std::uint8_t>& b, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) b.push_back((v >> (8 * i)) & 0xFF);
}

void PutTag(std::vector<std::uint8_t>& b, const char* tag) { b.insert(b.end(), tag, tag + 4); }

// Hand-assembled RIFF/WAVE container around raw sample bytes.
std::vector<std::uint8_t> Riff(std::uint16_t tag, std::uint16_t channels, std::uint32_t rate,
                               std::uint16_t bits, const std::vector<std::uint8_t>& payload,
                               bool extensible = false, std::uint16_t sub_tag = 1) {
  std::vector<std::uint8_t> fmt;
  const std::uint16_t align = channels * bits / 8;
  PutU16(fmt, extensible ? 0xFFFE : tag);
  PutU16(fmt, channels);
  PutU32(fmt, rate);
  PutU32(fmt, rate * align);
  PutU16(fmt, align);
  PutU16(fmt, bits);
  if (extensible) {
    PutU16(fmt, 22);
    PutU16(fmt, bits);
    PutU32(fmt, 0);
    PutU16(fmt, sub_tag);
    static const std::uint8_t kGuidTail[14] = {0x00, 0x00, 0x00, 0x00, 0x10, 0x00, 0x80,
                                               0x00, 0x00, 0xAA, 0x00, 0x38, 0x9B, 0x71};
    fmt.insert(fmt.end(), kGuidTail, kGuidTail + 14);
  }
  std::vector<std::uint8_t> out;
  PutTag(out, "RIFF");
  PutU32(out, static_cast<std::uint32_t>(4 + 8 + fmt.size() + 8 + payload.size()));
  PutTag(out, "WAVE");
  PutTag(out, "LIST");  // unknown chunk that must be skipped
  PutU32(out, 3);
  out.insert(out.end(), {'a', 'b', 'c', 0});
  PutTag(out, "fmt ");
  PutU32(out, static_cast<std::uint32_t>(fmt.size()));
  out.insert(out.end(), fmt.begin(), fmt.end());
  PutTag(out, "data");
  PutU32(out, static_cast<std::uint32_t>(payload.size()));
  out.insert(out.end(), payload.begin(), payload.end());
  return out;
}

std::vector<std::uint8_t> Pcm16(const std::vector<std::int16_t>& s) {
  std::vector<std::uint8_t> b;
  for (auto v : s) PutU16(b, static_cast<std::uint16_t>(v));
  return b;
}

AudioErrorKind DecodeErrorKind(const std::vector<std::uint8_t>& bytes) {
  try {
    DecodeWav(bytes, "mem", {});
  } catch (const AudioError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "decode unexpectedly succeeded";
  return AudioErrorKind::kUnreadable;
}

TEST(DecodeWav, SilenceDecodesToZeros) {
  const AudioClip c = DecodeWav(Riff(1, 1, 16000, 16, Pcm16(std::vector<std::int16_t>(800))),
                                "mem", {});
  EXPECT_EQ(c.size(), 800u);
  EXPECT_EQ(c.sample_rate(), 16000);
  for (float v : c.samples()) EXPECT_EQ(v, 0.0f);
  EXPECT_EQ(c.clipping_ratio(), 0.0);
}

TEST(DecodeWav, StereoOppositeChannelsDownmixToZero) {
  std::vector<std::int16_t> s;
  for (int i = 0; i < 100; ++i) {
    s.push_back(16384);
    s.push_back(-16384);
  }
  const AudioClip c = DecodeWav(Riff(1, 2, 22050, 16, Pcm16(s)), "mem", {});
  EXPECT_EQ(c.size(), 100u);
  for (float v : c.samples()) EXPECT_EQ(v, 0.0f);
}

TEST(DecodeWav, ExtensiblePcmMatchesPlainPcm) {
  const std::vector<std::int16_t> s = {0, 1000, -1000, 32000, -32000, 7};
  const AudioClip plain = DecodeWav(Riff(1, 1, 8000, 16, Pcm16(s)), "mem", {});
  const AudioClip ext = DecodeWav(Riff(1, 1, 8000, 16, Pcm16(s), true), "mem", {});
  ASSERT_EQ(plain.size(), ext.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    EXPECT_EQ(plain.samples()[i], ext.samples()[i]);
    EXPECT_FLOAT_EQ(plain.samples()[i], s[i] / 32768.0f);
  }
}

TEST(DecodeWav, RejectsMuLaw) {
  const std::vector<std::uint8_t> payload(100, 0xFF);
  EXPECT_EQ(DecodeErrorKind(Riff(7, 1, 8000, 8, payload)), AudioErrorKind::kUnsupportedCodec);
  EXPECT_EQ(DecodeErrorKind(Riff(1, 1, 8000, 8, payload, true, 7)),
            AudioErrorKind::kUnsupportedCodec);
}

TEST(DecodeWav, RejectsFlacAndGarbage) {
  std::vector<std::uint8_t> flac = {'f', 'L', 'a', 'C', 0, 0, 0, 34};
  EXPECT_EQ(DecodeErrorKind(flac), AudioErrorKind::kUnsupportedCodec);
  EXPECT_EQ(DecodeErrorKind({1, 2, 3}), AudioErrorKind::kUnreadable);
  std::vector<std::uint8_t> no_data = Riff(1, 1, 8000, 16, Pcm16({1, 2}));
  std::memcpy(no_data.data() + no_data.size() - 12, "junk", 4);
  EXPECT_EQ(DecodeErrorKind(no_data), AudioErrorKind::kUnreadable);
}

TEST(DecodeWav, EmptyDataChunkIsZeroLength) {
  EXPECT_EQ(DecodeErrorKind(Riff(1, 1, 16000, 16, {})), AudioErrorKind::kZeroLength);
}

TEST(DecodeWav, SaturatedCodesCountAsClipping) {
  const AudioClip c =
      DecodeWav(Riff(1, 1, 16000, 16, Pcm16({32767, 0, -32768, 100})), "mem", {});
  EXPECT_DOUBLE_EQ(c.clipping_ratio(), 0.5);
}

TEST(DecodeWav, EncodeRoundTripAcrossFormats) {
  std::vector<float> x = Sine(330.0, 0.05, 16000, 0.7);
  for (auto [fmt, tol] : {std::pair{WavSampleFormat::kPcm16, 0.5 / 32768},
                          std::pair{WavSampleFormat::kPcm24, 0.5 / 8388608},
                          std::pair{WavSampleFormat::kPcm32, 1e-7},
                          std::pair{WavSampleFormat::kFloat32, 0.0}}) {
    const AudioClip c = DecodeWav(EncodeWav({x}, 16000, fmt), "mem", {});
    ASSERT_EQ(c.size(), x.size());
    for (std::size_t i = 0; i < x.size(); ++i) EXPECT_NEAR(c.samples()[i], x[i], tol);
  }
}

TEST(LoadClip, ReadsFileAndKeepsMetadata) {
  TempDir dir("audio");
  const auto path = dir / "a.wav";
  WriteWav(path, Sine(200.0, 0.5, 16000), 16000);
  ManifestEntry e;
  e.utt_id = "u1";
  e.speaker_id = "spk";
  const AudioClip c = LoadClip(path, e);
  EXPECT_EQ(c.utt_id(), "u1");
  EXPECT_EQ(c.meta().speaker_id, "spk");
  EXPECT_DOUBLE_EQ(c.duration_s(), 0.5);
  EXPECT_THROW(LoadClip(dir / "missing.wav", e), AudioError);
}

TEST(AudioClip, ClampsOutOfRangeSamples) {
  const AudioClip c("x", {2.0f, -3.0f, 0.5f, 0.0f}, 16000);
  EXPECT_EQ(c.samples()[0], 1.0f);
  EXPECT_EQ(c.samples()[1], -1.0f);
  EXPECT_DOUBLE_EQ(c.clipping_ratio(), 0.5);
  EXPECT_THROW(AudioClip("x", {}, 16000), DataError);
  EXPECT_THROW(AudioClip("x", {NAN}, 16000), DataError);
  EXPECT_THROW(AudioClip("x", {0.0f}, 0), DataError);
}

double PeakFrequency(std::span<const float> x, int rate) {
  // Direct DFT magnitude on a 0.1 Hz grid around the expected tone.
  double best = 0.0, best_f = 0.0;
  for (double f = 400.0; f <= 480.0; f += 0.1) {
    std::complex<double> acc = 0.0;
    for (std::size_t n = 0; n < x.size(); ++n) {
      acc += static_cast<double>(x[n]) * std::polar(1.0, -2.0 * testing::kPi * f * n / rate);
    }
    if (std::abs(acc) > best) {
      best = std::abs(acc);
      best_f = f;
    }
  }
  return best_f;
}

TEST(Resample, ToneKeepsItsFrequency) {
  const AudioClip src("t", Sine(440.0, 0.5, 44100), 44100);
  for (auto b : {kernels::Backend::kSerial, kernels::Backend::kOpenMP}) {
    const AudioClip out = Resample(src, 16000, b);
    EXPECT_EQ(out.sample_rate(), 16000);
    EXPECT_NEAR(PeakFrequency(out.samples(), 16000), 440.0, 2.0);
  }
}

TEST(Resample, SameRateIsIdentity) {
  const AudioClip src("t", Sine(300.0, 0.2, 16000), 16000);
  const AudioClip out = Resample(src, 16000);
  ASSERT_EQ(out.size(), src.size());
  for (std::size_t i = 0; i < src.size(); ++i) EXPECT_EQ(out.samples()[i], src.samples()[i]);
}

TEST(Resample, OutputLengthTracksDuration) {
  for (int rate : {8000, 22050, 24000, 32000, 44100, 48000}) {
    const AudioClip src("t", std::vector<float>(rate, 0.1f), rate);
    const AudioClip out = Resample(src, 16000);
    EXPECT_NEAR(static_cast<double>(out.size()), 16000.0, 1.0) << rate;
  }
}

TEST(Resample, BackendsAgree) {
  std::vector<float> x = testing::WhiteNoise(22050, 0.2, 1);
  const AudioClip src("n", x, 22050);
  const AudioClip a = Resample(src, 16000, kernels::Backend::kSerial);
  const AudioClip b = Resample(src, 16000, kernels::Backend::kOpenMP);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a.samples()[i], b.samples()[i], 1e-5);
}

TEST(FrameSignal, OneSecondHasNinetyEightFrames) {
  const AudioClip c("c", std::vector<float>(16000, 0.1f), 16000);
  const FrameMatrix m = FrameSignal(c, 25.0, 10.0, kernels::Window::kHann);
  EXPECT_EQ(m.grid.n_frames, 98u);
  EXPECT_EQ(m.grid.frame_len_samples, 400u);
  EXPECT_EQ(m.grid.hop_samples, 160u);
}

TEST(FrameSignal, ShortClipHasNoFrames) {
  const AudioClip c("c", std::vector<float>(100, 0.1f), 16000);
  EXPECT_EQ(FrameSignal(c, 25.0, 10.0, kernels::Window::kHann).grid.n_frames, 0u);
}

TEST(FrameSignal, HannOnConstantEqualsWindow) {
  const AudioClip c("c", std::vector<float>(4000, 1.0f), 16000);
  const FrameMatrix m = FrameSignal(c, 25.0, 10.0, kernels::Window::kHann);
  const std::size_t n = m.grid.frame_len_samples;
  for (std::size_t f = 0; f < m.grid.n_frames; f += 7) {
    for (std::size_t i = 0; i < n; ++i) {
      EXPECT_NEAR(m.frame(f)[i], 0.5 - 0.5 * std::cos(2.0 * testing::kPi * i / n), 1e-12);
    }
  }
}

TEST(FrameSignal, MatchesNaiveSlicing) {
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<int> len(1, 6000);
  std::uniform_real_distribution<double> ms(1.0, 40.0);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = len(rng);
    double frame_ms = ms(rng), hop_ms = ms(rng);
    if (hop_ms > frame_ms) std::swap(hop_ms, frame_ms);
    const AudioClip c("c", testing::WhiteNoise(n, 0.1, trial), 16000);
    const FrameMatrix m = FrameSignal(c, frame_ms, hop_ms, kernels::Window::kRectangular);
    const std::size_t fl = MsToSamples(frame_ms, 16000), hop = MsToSamples(hop_ms, 16000);
    std::size_t expected = 0;
    for (std::size_t s = 0; s + fl <= static_cast<std::size_t>(n); s += hop) ++expected;
    ASSERT_EQ(m.grid.n_frames, expected);
    if (expected > 0) {
      const std::size_t last = expected - 1;
      for (std::size_t i = 0; i < fl; ++i) {
        EXPECT_EQ(m.frame(last)[i], c.samples()[last * hop + i]);
      }
    }
  }
}

TEST(FrameSignal, RejectsHopLongerThanFrame) {
  const AudioClip c("c", std::vector<float>(1000, 0.1f), 16000);
  EXPECT_THROW(FrameSignal(c, 10.0, 25.0, kernels::Window::kHann), std::invalid_argument);
  EXPECT_THROW(FrameSignal(c, 10.0, 0.0, kernels::Window::kHann), std::invalid_argument);
}

}  // namespace
}  // namespace forensa
