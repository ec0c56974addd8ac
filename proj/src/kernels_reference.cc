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

// Serial reference kernels. Deliberately direct: every sum is written out
// as in its defining formula so the parallel kernels can be checked
// against them.

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "forensa/kernels.h"
#include "kernels_internal.h"

namespace forensa::kernels::reference {

void Resample(const ResampleKernel& k, std::span<const float> in,
              std::span<float> out) {
  const auto n_in = static_cast<std::int64_t>(in.size());
  for (std::size_t n = 0; n < out.size(); ++n) {
    const auto num = static_cast<std::int64_t>(n) * k.down;
    const std::int64_t base = num / k.up;
    const double frac = static_cast<double>(num % k.up) / k.up;
    double acc = 0.0;
    for (int j = -k.half_width + 1; j <= k.half_width; ++j) {
      const std::int64_t idx = base + j;
      if (idx < 0 || idx >= n_in) continue;
      acc += static_cast<double>(in[idx]) * k.Eval(frac - j);
    }
    out[n] = static_cast<float>(acc);
  }
}

void PitchFrames(std::span<const float> x, const FrameGrid& grid,
                 const PitchParams& p, std::span<PitchFrame> out) {
  const std::size_t w = grid.frame_len_samples;
  const int max_lag = MaxLag(p);
  std::vector<double> seg(w + max_lag);
  std::vector<double> d(max_lag + 1), cross(max_lag + 1), energy(max_lag + 1);
  for (std::size_t i = 0; i < grid.n_frames; ++i) {
    internal::CopySegment(x, grid.start(i), seg);
    for (int tau = 0; tau <= max_lag; ++tau) {
      double diff = 0.0, c = 0.0, e = 0.0;
      for (std::size_t j = 0; j < w; ++j) {
        const double delta = seg[j] - seg[j + tau];
        diff += delta * delta;
        c += seg[j] * seg[j + tau];
        e += seg[j + tau] * seg[j + tau];
      }
      d[tau] = diff;
      cross[tau] = c;
      energy[tau] = e;
    }
    const double rms_db =
        internal::RmsDb(std::span<const double>(seg).first(w));
    out[i] = internal::FinishPitchFrame(d, cross, energy, rms_db, p);
  }
}

void SpectralFrames(std::span<const float> x, const FrameGrid& grid,
                    int sample_rate, std::span<SpectralFrame> out) {
  const std::size_t w = grid.frame_len_samples;
  const std::size_t n_fft = NextPowerOfTwo(w);
  const std::size_t bins = n_fft / 2 + 1;
  const std::vector<double> window = MakeWindow(Window::kHann, w);
  std::vector<double> frame(w);
  std::vector<std::complex<double>> spectrum(bins);
  const double bin_hz = static_cast<double>(sample_rate) / n_fft;
  for (std::size_t i = 0; i < grid.n_frames; ++i) {
    internal::CopySegment(x, grid.start(i), frame);
    SpectralFrame& f = out[i];
    f.rms_db = internal::RmsDb(frame);
    f.zcr = internal::ZeroCrossingRate(frame);
    for (std::size_t k = 0; k < bins; ++k) {
      std::complex<double> acc = 0.0;
      for (std::size_t n = 0; n < w; ++n) {
        const double phase = -2.0 * std::numbers::pi *
                             static_cast<double>((k * n) % n_fft) / n_fft;
        acc += frame[n] * window[n] * std::polar(1.0, phase);
      }
      spectrum[k] = acc;
    }
    internal::FinishSpectralFrame(spectrum, bin_hz, f);
  }
}

void FormantFrames(std::span<const float> x, const FrameGrid& grid,
                   std::span<const std::uint8_t> voiced, const FormantParams& p,
                   std::span<FormantFrame> out) {
  for (std::size_t i = 0; i < grid.n_frames; ++i) {
    out[i] = voiced[i] ? AnalyzeFormantFrame(
                             x.subspan(grid.start(i), grid.frame_len_samples), p)
                       : FormantFrame{};
  }
}

}  // namespace forensa::kernels::reference
