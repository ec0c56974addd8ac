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

// Per-frame helpers shared by the reference and parallel kernels.

#ifndef FORENSA_SRC_KERNELS_INTERNAL_H_
#define FORENSA_SRC_KERNELS_INTERNAL_H_

#include <algorithm>
#include <cmath>
#include <complex>
#include <span>
#include <vector>

#include "forensa/kernels.h"

namespace forensa::kernels::internal {

// x[start, start + out.size()), zero beyond the end of x.
inline void CopySegment(std::span<const float> x, std::size_t start,
                        std::span<double> out) {
  for (std::size_t i = 0; i < out.size(); ++i) {
    const std::size_t k = start + i;
    out[i] = k < x.size() ? static_cast<double>(x[k]) : 0.0;
  }
}

inline double RmsDb(std::span<const double> v) {
  double acc = 0.0;
  for (double s : v) acc += s * s;
  const double rms = v.empty() ? 0.0 : std::sqrt(acc / v.size());
  return 20.0 * std::log10(rms + 1e-10);
}

// Sign changes per sample; zero counts as positive.
inline double ZeroCrossingRate(std::span<const double> v) {
  if (v.empty()) return 0.0;
  std::size_t changes = 0;
  for (std::size_t i = 1; i < v.size(); ++i) {
    if ((v[i] >= 0.0) != (v[i - 1] >= 0.0)) ++changes;
  }
  return static_cast<double>(changes) / static_cast<double>(v.size());
}

inline void FinishSpectralFrame(std::span<const std::complex<double>> spectrum,
                                double bin_hz, SpectralFrame& f) {
  const std::size_t bins = spectrum.size();
  std::vector<double> power(bins);
  double total = 0.0;
  for (std::size_t k = 0; k < bins; ++k) {
    power[k] = std::norm(spectrum[k]);
    total += power[k];
  }
  if (!(total > 0.0)) {
    f.has_power = false;
    f.unit_magnitude.clear();
    return;
  }
  f.has_power = true;
  double centroid = 0.0;
  for (std::size_t k = 0; k < bins; ++k) centroid += k * bin_hz * power[k];
  centroid /= total;
  double spread = 0.0;
  for (std::size_t k = 0; k < bins; ++k) {
    const double d = k * bin_hz - centroid;
    spread += d * d * power[k];
  }
  f.centroid_hz = centroid;
  f.bandwidth_hz = std::sqrt(spread / total);
  double cum = 0.0;
  f.rolloff_hz = (bins - 1) * bin_hz;
  for (std::size_t k = 0; k < bins; ++k) {
    cum += power[k];
    if (cum >= 0.85 * total) {
      f.rolloff_hz = k * bin_hz;
      break;
    }
  }
  const double norm = std::sqrt(total);
  f.unit_magnitude.resize(bins);
  for (std::size_t k = 0; k < bins; ++k) {
    f.unit_magnitude[k] = std::abs(spectrum[k]) / norm;
  }
}

// Largest value of the parabola through three equally spaced samples, or the
// middle sample when they are not concave.
inline double PeakOfThree(double a, double b, double c) {
  const double denom = a - 2.0 * b + c;
  if (denom >= 0.0) return std::max({a, b, c});
  const double shift = std::clamp(0.5 * (a - c) / denom, -1.0, 1.0);
  return b - 0.25 * (a - c) * shift;
}

// Turns the difference function `d` into the cumulative-mean-normalized
// difference, then derives f0, voicing and periodicity. `cross[t]` and
// `energy[t]` are sum x_j x_{j+t} and sum x_{j+t}^2 over the integration
// window.
inline PitchFrame FinishPitchFrame(std::vector<double>& d,
                                   std::span<const double> cross,
                                   std::span<const double> energy,
                                   double rms_db, const PitchParams& p) {
  PitchFrame f;
  f.rms_db = rms_db;
  const int max_lag = static_cast<int>(d.size()) - 1;
  double running = 0.0;
  d[0] = 1.0;
  for (int tau = 1; tau <= max_lag; ++tau) {
    running += d[tau];
    d[tau] = running > 0.0 ? d[tau] * tau / running : 1.0;
  }
  const double lag = PickYinLag(d, MinLag(p), max_lag, p.threshold);
  if (lag <= 0.0) return f;
  const double f0 = p.sample_rate / lag;
  const int tau0 = std::clamp(static_cast<int>(std::lround(lag)), 1, max_lag - 1);
  f.aperiodicity = d[tau0];
  if (!(rms_db > p.voicing_floor_db) || f0 < p.f0_min_hz || f0 > p.f0_max_hz) {
    return f;
  }
  f.voiced = true;
  f.f0_hz = f0;
  auto r = [&](int t) {
    const double den = std::sqrt(energy[0] * energy[t]);
    return den > 0.0 ? cross[t] / den : 0.0;
  };
  f.periodicity = std::min(1.0, PeakOfThree(r(tau0 - 1), r(tau0), r(tau0 + 1)));
  return f;
}

}  // namespace forensa::kernels::internal

#endif  // FORENSA_SRC_KERNELS_INTERNAL_H_
