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

// OpenMP kernels. Frames (or output samples) are independent, so each loop
// is a flat parallel-for writing to its own output slot.

#include <complex>
#include <cstdint>
#include <vector>

#include "forensa/kernels.h"
#include "kernels_internal.h"

namespace forensa::kernels::parallel {

void Resample(const ResampleKernel& k, std::span<const float> in,
              std::span<float> out) {
  const int taps = 2 * k.half_width;
  std::vector<double> table(static_cast<std::size_t>(k.up) * taps);
  for (int phase = 0; phase < k.up; ++phase) {
    const double frac = static_cast<double>(phase) / k.up;
    for (int t = 0; t < taps; ++t) {
      const int j = t - k.half_width + 1;
      table[static_cast<std::size_t>(phase) * taps + t] = k.Eval(frac - j);
    }
  }
  const auto n_in = static_cast<std::int64_t>(in.size());
  const auto n_out = static_cast<std::int64_t>(out.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t n = 0; n < n_out; ++n) {
    const std::int64_t num = n * k.down;
    const std::int64_t base = num / k.up;
    const double* h = &table[static_cast<std::size_t>(num % k.up) * taps];
    double acc = 0.0;
    for (int t = 0; t < taps; ++t) {
      const std::int64_t idx = base + t - k.half_width + 1;
      if (idx < 0 || idx >= n_in) continue;
      acc += static_cast<double>(in[idx]) * h[t];
    }
    out[n] = static_cast<float>(acc);
  }
}

void PitchFrames(std::span<const float> x, const FrameGrid& grid,
                 const PitchParams& p, std::span<PitchFrame> out) {
  const std::size_t w = grid.frame_len_samples;
  const int max_lag = MaxLag(p);
  const std::size_t seg_len = w + max_lag;
  // Linear correlation of the window against the segment needs no wrap
  // guard: the window is zero past w and lags stop at max_lag.
  const RealFft fft(NextPowerOfTwo(seg_len));
  const std::size_t n_fft = fft.size();
  const auto n_frames = static_cast<std::int64_t>(grid.n_frames);

#pragma omp parallel
  {
    std::vector<double> seg(n_fft, 0.0), head(n_fft, 0.0), corr(n_fft);
    std::vector<double> prefix(seg_len + 1);
    std::vector<std::complex<double>> seg_spec(fft.bins()), head_spec(fft.bins());
    std::vector<double> d(max_lag + 1), cross(max_lag + 1), energy(max_lag + 1);

#pragma omp for schedule(dynamic, 8)
    for (std::int64_t i = 0; i < n_frames; ++i) {
      internal::CopySegment(x, grid.start(i),
                            std::span<double>(seg).first(seg_len));
      std::copy_n(seg.begin(), w, head.begin());
      fft.Forward(seg, seg_spec);
      fft.Forward(head, head_spec);
      for (std::size_t k = 0; k < seg_spec.size(); ++k) {
        seg_spec[k] *= std::conj(head_spec[k]);
      }
      fft.Inverse(seg_spec, corr);

      prefix[0] = 0.0;
      for (std::size_t j = 0; j < seg_len; ++j) {
        prefix[j + 1] = prefix[j] + seg[j] * seg[j];
      }
      const double e0 = prefix[w];
      for (int tau = 0; tau <= max_lag; ++tau) {
        cross[tau] = corr[tau] / static_cast<double>(n_fft);
        energy[tau] = prefix[tau + w] - prefix[tau];
        d[tau] = std::max(0.0, e0 + energy[tau] - 2.0 * cross[tau]);
      }
      const double rms_db =
          internal::RmsDb(std::span<const double>(seg).first(w));
      out[i] = internal::FinishPitchFrame(d, cross, energy, rms_db, p);
    }
  }
}

void SpectralFrames(std::span<const float> x, const FrameGrid& grid,
                    int sample_rate, std::span<SpectralFrame> out) {
  const std::size_t w = grid.frame_len_samples;
  const RealFft fft(NextPowerOfTwo(w));
  const std::vector<double> window = MakeWindow(Window::kHann, w);
  const double bin_hz = static_cast<double>(sample_rate) / fft.size();
  const auto n_frames = static_cast<std::int64_t>(grid.n_frames);

#pragma omp parallel
  {
    std::vector<double> frame(w), padded(fft.size(), 0.0);
    std::vector<std::complex<double>> spectrum(fft.bins());
#pragma omp for schedule(dynamic, 8)
    for (std::int64_t i = 0; i < n_frames; ++i) {
      internal::CopySegment(x, grid.start(i), frame);
      SpectralFrame& f = out[i];
      f.rms_db = internal::RmsDb(frame);
      f.zcr = internal::ZeroCrossingRate(frame);
      for (std::size_t n = 0; n < w; ++n) padded[n] = frame[n] * window[n];
      fft.Forward(padded, spectrum);
      internal::FinishSpectralFrame(spectrum, bin_hz, f);
    }
  }
}

void FormantFrames(std::span<const float> x, const FrameGrid& grid,
                   std::span<const std::uint8_t> voiced, const FormantParams& p,
                   std::span<FormantFrame> out) {
  const auto n_frames = static_cast<std::int64_t>(grid.n_frames);
#pragma omp parallel for schedule(dynamic, 4)
  for (std::int64_t i = 0; i < n_frames; ++i) {
    out[i] = voiced[i] ? AnalyzeFormantFrame(
                             x.subspan(grid.start(i), grid.frame_len_samples), p)
                       : FormantFrame{};
  }
}

}  // namespace forensa::kernels::parallel
