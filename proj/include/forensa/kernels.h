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

// Frame-level DSP kernels. Each kernel exists twice: a direct serial
// reference used as the testing oracle, and an OpenMP implementation that
// the pipeline runs by default. Both produce one record per frame of a
// FrameGrid; all clip-level reductions happen afterwards, serially, so the
// parallel results are bitwise reproducible run to run.

#ifndef FORENSA_KERNELS_H_
#define FORENSA_KERNELS_H_

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace forensa::kernels {

enum class Backend { kSerial, kOpenMP };
enum class Window { kRectangular, kHann };

struct FrameGrid {
  std::size_t frame_len_samples = 0;
  std::size_t hop_samples = 1;
  std::size_t n_frames = 0;
  Window window = Window::kRectangular;

  std::size_t start(std::size_t i) const { return i * hop_samples; }
};

// n_frames = floor((n - frame) / hop) + 1 when n >= frame, else 0.
FrameGrid MakeFrameGrid(std::size_t n_samples, std::size_t frame_len,
                        std::size_t hop, Window window);

// Periodic Hann (0.5 - 0.5 cos(2 pi n / N)) or all ones.
std::vector<double> MakeWindow(Window window, std::size_t n);

// Real-input FFT of a fixed size backed by FFTW. Construction takes a global
// planner lock; Forward/Inverse are safe to call concurrently.
class RealFft {
 public:
  explicit RealFft(std::size_t n);
  ~RealFft();
  RealFft(const RealFft&) = delete;
  RealFft& operator=(const RealFft&) = delete;

  std::size_t size() const { return n_; }
  std::size_t bins() const { return n_ / 2 + 1; }

  // in.size() == size(), out.size() == bins().
  void Forward(std::span<const double> in,
               std::span<std::complex<double>> out) const;
  // Unnormalized inverse: Inverse(Forward(x)) == size() * x.
  void Inverse(std::span<const std::complex<double>> in,
               std::span<double> out) const;

 private:
  struct Plans;
  std::size_t n_;
  std::unique_ptr<Plans> plans_;
};

std::size_t NextPowerOfTwo(std::size_t n);

// ---------------------------------------------------------------------------
// Resampling

struct ResampleKernel {
  int up = 1;
  int down = 1;
  double cutoff = 1.0;  // relative to the input Nyquist frequency
  int half_width = 0;   // taps on each side of the interpolation point
  double beta = 8.0;

  // Windowed-sinc impulse response at offset `u` input samples.
  double Eval(double u) const;
};

ResampleKernel DesignResampleKernel(int source_rate, int target_rate);
std::size_t ResampledLength(std::size_t n_in, const ResampleKernel& k);

// ---------------------------------------------------------------------------
// Pitch (YIN) and periodicity

struct PitchParams {
  int sample_rate = 16000;
  double f0_min_hz = 60.0;
  double f0_max_hz = 400.0;
  double threshold = 0.15;
  double voicing_floor_db = -50.0;
};

struct PitchFrame {
  double f0_hz = 0.0;
  bool voiced = false;
  double aperiodicity = 1.0;  // cumulative-mean-normalized difference at f0
  double rms_db = -200.0;
  // Peak normalized autocorrelation at the f0 lag, voiced frames only.
  double periodicity = 0.0;
};

// Longest lag searched, floor(rate / f0_min).
int MaxLag(const PitchParams& p);
// Shortest lag searched, max(2, floor(rate / f0_max)).
int MinLag(const PitchParams& p);

// Picks the YIN lag from a cumulative-mean-normalized difference function
// (index = lag). Returns the interpolated lag, or 0 when no dip falls below
// the threshold.
double PickYinLag(std::span<const double> cmnd, int min_lag, int max_lag,
                  double threshold);

// ---------------------------------------------------------------------------
// Spectral profile

struct SpectralFrame {
  double rms_db = -200.0;
  double zcr = 0.0;
  bool has_power = false;  // false for digitally silent frames
  double centroid_hz = 0.0;
  double bandwidth_hz = 0.0;
  double rolloff_hz = 0.0;
  std::vector<double> unit_magnitude;  // |X| scaled to unit L2 norm
};

// L2 distance between two unit-norm magnitude spectra.
double SpectralFlux(const SpectralFrame& a, const SpectralFrame& b);

// ---------------------------------------------------------------------------
// Formants (LPC)

struct FormantParams {
  int sample_rate = 16000;
  int lpc_order = 18;
  double preemphasis = 0.97;
  double max_bandwidth_hz = 400.0;
  double min_freq_hz = 90.0;
};

struct FormantFrame {
  int count = 0;  // number of valid candidates kept, at most 3
  std::array<double, 3> hz{};
};

// Autocorrelation-method LPC. Returns a[1..order] for the predictor
// polynomial A(z) = 1 + sum a_k z^-k; empty when the frame has no energy.
std::vector<double> LpcCoefficients(std::span<const double> frame, int order);

// Roots of z^p + c[0] z^(p-1) + ... + c[p-1] via companion-matrix eigenvalues.
std::vector<std::complex<double>> MonicPolynomialRoots(
    std::span<const double> coeffs);

FormantFrame AnalyzeFormantFrame(std::span<const float> frame,
                                 const FormantParams& p);

// ---------------------------------------------------------------------------
// Kernel entry points

namespace reference {

// Evaluates the windowed sinc directly for every output sample.
void Resample(const ResampleKernel& k, std::span<const float> in,
              std::span<float> out);
// Direct O(W * max_lag) difference function per frame.
void PitchFrames(std::span<const float> x, const FrameGrid& grid,
                 const PitchParams& p, std::span<PitchFrame> out);
// Direct O(N^2) DFT per frame.
void SpectralFrames(std::span<const float> x, const FrameGrid& grid,
                    int sample_rate, std::span<SpectralFrame> out);
void FormantFrames(std::span<const float> x, const FrameGrid& grid,
                   std::span<const std::uint8_t> voiced, const FormantParams& p,
                   std::span<FormantFrame> out);

}  // namespace reference

namespace parallel {

// Precomputed polyphase table.
void Resample(const ResampleKernel& k, std::span<const float> in,
              std::span<float> out);
// FFT cross-correlation with running energies.
void PitchFrames(std::span<const float> x, const FrameGrid& grid,
                 const PitchParams& p, std::span<PitchFrame> out);
void SpectralFrames(std::span<const float> x, const FrameGrid& grid,
                    int sample_rate, std::span<SpectralFrame> out);
void FormantFrames(std::span<const float> x, const FrameGrid& grid,
                   std::span<const std::uint8_t> voiced, const FormantParams& p,
                   std::span<FormantFrame> out);

}  // namespace parallel

void Resample(Backend b, const ResampleKernel& k, std::span<const float> in,
              std::span<float> out);
void PitchFrames(Backend b, std::span<const float> x, const FrameGrid& grid,
                 const PitchParams& p, std::span<PitchFrame> out);
void SpectralFrames(Backend b, std::span<const float> x, const FrameGrid& grid,
                    int sample_rate, std::span<SpectralFrame> out);
void FormantFrames(Backend b, std::span<const float> x, const FrameGrid& grid,
                   std::span<const std::uint8_t> voiced, const FormantParams& p,
                   std::span<FormantFrame> out);

}  // namespace forensa::kernels

#endif  // FORENSA_KERNELS_H_
