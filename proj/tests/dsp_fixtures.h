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

#ifndef FORENSA_TESTS_DSP_FIXTURES_H_
#define FORENSA_TESTS_DSP_FIXTURES_H_

#include <cmath>
#include <cstddef>
#include <vector>

#include "test_signals.h"

// Constructed signals with analytically known features, all at 16 kHz.
namespace forensa::testing {

inline constexpr int kFixtureRate = 16000;

// 120 Hz glottal train through two cascaded resonators, 2 s.
inline std::vector<float> TwoResonatorSource(const Resonator& r1, const Resonator& r2) {
  std::vector<float> y = r2.Apply(r1.Apply(ImpulseTrain(120.0, 2.0, kFixtureRate)));
  Normalize(y, 0.8);
  return y;
}

// Period marks at known fractional positions; the oracle applies the
// local jitter and shimmer formulas to the true positions and amplitudes.
struct PulseSpec {
  std::vector<double> positions;
  std::vector<double> amplitudes;
};

inline PulseSpec Alternating(double p0, double p1, double a0, double a1, std::size_t n) {
  PulseSpec s;
  double t = 100.0;
  for (int k = 0; t < n - 200.0; ++k) {
    s.positions.push_back(t);
    s.amplitudes.push_back(k % 2 ? a1 : a0);
    t += k % 2 ? p1 : p0;
  }
  return s;
}

inline double OracleJitterPct(const PulseSpec& s) {
  std::vector<double> periods;
  for (std::size_t i = 1; i < s.positions.size(); ++i) {
    periods.push_back(s.positions[i] - s.positions[i - 1]);
  }
  double diff = 0.0, mean = 0.0;
  for (std::size_t i = 1; i < periods.size(); ++i) diff += std::fabs(periods[i] - periods[i - 1]);
  for (double p : periods) mean += p;
  return 100.0 * (diff / (periods.size() - 1)) / (mean / periods.size());
}

inline double OracleShimmerPct(const PulseSpec& s) {
  double diff = 0.0, mean = 0.0;
  for (std::size_t i = 1; i < s.amplitudes.size(); ++i) {
    diff += std::fabs(s.amplitudes[i] - s.amplitudes[i - 1]);
  }
  for (double a : s.amplitudes) mean += a;
  return 100.0 * (diff / (s.amplitudes.size() - 1)) / (mean / s.amplitudes.size());
}

// 1 s of 200 Hz, `gap_s` of digital silence, 1 s of 200 Hz.
inline std::vector<float> ToneGapTone(double gap_s) {
  std::vector<float> x = Sine(200.0, 1.0, kFixtureRate);
  x.resize(x.size() + static_cast<std::size_t>(gap_s * kFixtureRate), 0.0f);
  const std::vector<float> tail = Sine(200.0, 1.0, kFixtureRate);
  x.insert(x.end(), tail.begin(), tail.end());
  return x;
}

}  // namespace forensa::testing

#endif  // FORENSA_TESTS_DSP_FIXTURES_H_
