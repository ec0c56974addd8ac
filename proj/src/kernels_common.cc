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

#include <algorithm>
#include <cmath>
#include <complex>
#include <mutex>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include <Eigen/Dense>
#include <fftw3.h>

#include "forensa/kernels.h"

namespace forensa::kernels {

FrameGrid MakeFrameGrid(std::size_t n_samples, std::size_t frame_len,
                        std::size_t hop, Window window) {
  if (hop < 1 || frame_len < hop) {
    throw std::invalid_argument("frame grid requires frame_len >= hop >= 1");
  }
  FrameGrid g;
  g.frame_len_samples = frame_len;
  g.hop_samples = hop;
  g.window = window;
  g.n_frames = n_samples >= frame_len ? (n_samples - frame_len) / hop + 1 : 0;
  return g;
}

std::vector<double> MakeWindow(Window window, std::size_t n) {
  std::vector<double> w(n, 1.0);
  if (window == Window::kHann) {
    for (std::size_t i = 0; i < n; ++i) {
      w[i] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(i) /
                                  static_cast<double>(n));
    }
  }
  return w;
}

std::size_t NextPowerOfTwo(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

// ---------------------------------------------------------------------------
// RealFft

namespace {
std::mutex& PlannerMutex() {
  static std::mutex m;
  return m;
}
}  // namespace

struct RealFft::Plans {
  fftw_plan forward = nullptr;
  fftw_plan inverse = nullptr;
};

RealFft::RealFft(std::size_t n) : n_(n), plans_(std::make_unique<Plans>()) {
  if (n < 2) throw std::invalid_argument("FFT size must be at least 2");
  std::lock_guard<std::mutex> lock(PlannerMutex());
  double* real = fftw_alloc_real(n);
  fftw_complex* cplx = fftw_alloc_complex(n / 2 + 1);
  const int size = static_cast<int>(n);
  plans_->forward = fftw_plan_dft_r2c_1d(size, real, cplx,
                                         FFTW_ESTIMATE | FFTW_UNALIGNED);
  plans_->inverse = fftw_plan_dft_c2r_1d(size, cplx, real,
                                         FFTW_ESTIMATE | FFTW_UNALIGNED);
  fftw_free(real);
  fftw_free(cplx);
}

RealFft::~RealFft() {
  std::lock_guard<std::mutex> lock(PlannerMutex());
  fftw_destroy_plan(plans_->forward);
  fftw_destroy_plan(plans_->inverse);
}

void RealFft::Forward(std::span<const double> in,
                      std::span<std::complex<double>> out) const {
  if (in.size() != n_ || out.size() != bins()) {
    throw std::invalid_argument("RealFft::Forward size mismatch");
  }
  // Out-of-place r2c leaves its input untouched.
  fftw_execute_dft_r2c(plans_->forward, const_cast<double*>(in.data()),
                       reinterpret_cast<fftw_complex*>(out.data()));
}

void RealFft::Inverse(std::span<const std::complex<double>> in,
                      std::span<double> out) const {
  if (in.size() != bins() || out.size() != n_) {
    throw std::invalid_argument("RealFft::Inverse size mismatch");
  }
  // c2r destroys its input.
  std::vector<std::complex<double>> scratch(in.begin(), in.end());
  fftw_execute_dft_c2r(plans_->inverse,
                       reinterpret_cast<fftw_complex*>(scratch.data()),
                       out.data());
}

// ---------------------------------------------------------------------------
// Resampling

namespace {
constexpr int kZeroCrossings = 16;
constexpr double kCutoffMargin = 0.95;
}  // namespace

double ResampleKernel::Eval(double u) const {
  const double hw = static_cast<double>(half_width);
  if (std::abs(u) >= hw) return 0.0;
  const double x = cutoff * u;
  const double sinc =
      x == 0.0 ? 1.0 : std::sin(std::numbers::pi * x) / (std::numbers::pi * x);
  const double r = u / hw;
  const double win =
      std::cyl_bessel_i(0.0, beta * std::sqrt(1.0 - r * r)) /
      std::cyl_bessel_i(0.0, beta);
  return cutoff * sinc * win;
}

ResampleKernel DesignResampleKernel(int source_rate, int target_rate) {
  if (source_rate <= 0 || target_rate <= 0) {
    throw std::invalid_argument("sample rates must be positive");
  }
  const int g = std::gcd(source_rate, target_rate);
  ResampleKernel k;
  k.up = target_rate / g;
  k.down = source_rate / g;
  k.cutoff = kCutoffMargin *
             std::min(1.0, static_cast<double>(k.up) / static_cast<double>(k.down));
  k.half_width = static_cast<int>(std::ceil(kZeroCrossings / k.cutoff));
  return k;
}

std::size_t ResampledLength(std::size_t n_in, const ResampleKernel& k) {
  const auto up = static_cast<std::size_t>(k.up);
  const auto down = static_cast<std::size_t>(k.down);
  return (n_in * up + down - 1) / down;
}

// ---------------------------------------------------------------------------
// Pitch helpers

int MaxLag(const PitchParams& p) {
  return static_cast<int>(std::floor(p.sample_rate / p.f0_min_hz));
}

int MinLag(const PitchParams& p) {
  return std::max(2, static_cast<int>(std::floor(p.sample_rate / p.f0_max_hz)));
}

double PickYinLag(std::span<const double> cmnd, int min_lag, int max_lag,
                  double threshold) {
  const int last = std::min<int>(max_lag, static_cast<int>(cmnd.size()) - 1);
  for (int tau = min_lag; tau < last; ++tau) {
    if (cmnd[tau] >= threshold) continue;
    while (tau + 1 < last && cmnd[tau + 1] < cmnd[tau]) ++tau;
    const double a = cmnd[tau - 1];
    const double b = cmnd[tau];
    const double c = cmnd[tau + 1];
    const double denom = a - 2.0 * b + c;
    double shift = denom > 0.0 ? 0.5 * (a - c) / denom : 0.0;
    shift = std::clamp(shift, -1.0, 1.0);
    return static_cast<double>(tau) + shift;
  }
  return 0.0;
}

// ---------------------------------------------------------------------------
// Spectral helpers

double SpectralFlux(const SpectralFrame& a, const SpectralFrame& b) {
  double acc = 0.0;
  for (std::size_t k = 0; k < a.unit_magnitude.size(); ++k) {
    const double d = a.unit_magnitude[k] - b.unit_magnitude[k];
    acc += d * d;
  }
  return std::sqrt(acc);
}

// ---------------------------------------------------------------------------
// LPC and formants

std::vector<double> LpcCoefficients(std::span<const double> frame, int order) {
  const std::size_t n = frame.size();
  std::vector<double> r(order + 1, 0.0);
  for (int lag = 0; lag <= order; ++lag) {
    double acc = 0.0;
    for (std::size_t i = static_cast<std::size_t>(lag); i < n; ++i) {
      acc += frame[i] * frame[i - lag];
    }
    r[lag] = acc;
  }
  if (!(r[0] > 0.0)) return {};
  r[0] *= 1.0 + 1e-9;  // white-noise correction keeps the recursion stable

  std::vector<double> a(order + 1, 0.0), prev(order + 1, 0.0);
  a[0] = 1.0;
  double err = r[0];
  for (int i = 1; i <= order; ++i) {
    double acc = r[i];
    for (int j = 1; j < i; ++j) acc += a[j] * r[i - j];
    const double k = -acc / err;
    prev = a;
    for (int j = 1; j < i; ++j) a[j] = prev[j] + k * prev[i - j];
    a[i] = k;
    err *= 1.0 - k * k;
    if (!(err > 0.0)) break;
  }
  return std::vector<double>(a.begin() + 1, a.end());
}

std::vector<std::complex<double>> MonicPolynomialRoots(
    std::span<const double> coeffs) {
  const auto p = static_cast<Eigen::Index>(coeffs.size());
  if (p == 0) return {};
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(p, p);
  for (Eigen::Index j = 0; j < p; ++j) companion(0, j) = -coeffs[j];
  for (Eigen::Index i = 1; i < p; ++i) companion(i, i - 1) = 1.0;
  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
  const auto& ev = solver.eigenvalues();
  std::vector<std::complex<double>> roots(ev.data(), ev.data() + ev.size());
  return roots;
}

FormantFrame AnalyzeFormantFrame(std::span<const float> frame,
                                 const FormantParams& p) {
  const std::size_t n = frame.size();
  FormantFrame out;
  if (n <= static_cast<std::size_t>(p.lpc_order)) return out;
  const std::vector<double> window = MakeWindow(Window::kHann, n);
  std::vector<double> y(n);
  y[0] = frame[0] * window[0];
  for (std::size_t i = 1; i < n; ++i) {
    y[i] = (frame[i] - p.preemphasis * frame[i - 1]) * window[i];
  }
  const std::vector<double> a = LpcCoefficients(y, p.lpc_order);
  if (a.empty()) return out;

  std::vector<double> candidates;
  const double rate = p.sample_rate;
  for (const auto& z : MonicPolynomialRoots(a)) {
    if (z.imag() <= 1e-12) continue;
    const double freq = std::arg(z) * rate / (2.0 * std::numbers::pi);
    const double bw = -std::log(std::abs(z)) * rate / std::numbers::pi;
    if (bw > p.max_bandwidth_hz || freq < p.min_freq_hz) continue;
    candidates.push_back(freq);
  }
  std::sort(candidates.begin(), candidates.end());
  out.count = static_cast<int>(std::min<std::size_t>(3, candidates.size()));
  for (int i = 0; i < out.count; ++i) out.hz[i] = candidates[i];
  return out;
}

// ---------------------------------------------------------------------------
// Dispatch

void Resample(Backend b, const ResampleKernel& k, std::span<const float> in,
              std::span<float> out) {
  if (b == Backend::kSerial) {
    reference::Resample(k, in, out);
  } else {
    parallel::Resample(k, in, out);
  }
}

void PitchFrames(Backend b, std::span<const float> x, const FrameGrid& grid,
                 const PitchParams& p, std::span<PitchFrame> out) {
  if (b == Backend::kSerial) {
    reference::PitchFrames(x, grid, p, out);
  } else {
    parallel::PitchFrames(x, grid, p, out);
  }
}

void SpectralFrames(Backend b, std::span<const float> x, const FrameGrid& grid,
                    int sample_rate, std::span<SpectralFrame> out) {
  if (b == Backend::kSerial) {
    reference::SpectralFrames(x, grid, sample_rate, out);
  } else {
    parallel::SpectralFrames(x, grid, sample_rate, out);
  }
}

void FormantFrames(Backend b, std::span<const float> x, const FrameGrid& grid,
                   std::span<const std::uint8_t> voiced, const FormantParams& p,
                   std::span<FormantFrame> out) {
  if (b == Backend::kSerial) {
    reference::FormantFrames(x, grid, voiced, p, out);
  } else {
    parallel::FormantFrames(x, grid, voiced, p, out);
  }
}

}  // namespace forensa::kernels
