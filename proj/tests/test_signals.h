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

// Synthetic signals and scratch directories shared by the tests.

#ifndef FORENSA_TESTS_TEST_SIGNALS_H_
#define FORENSA_TESTS_TEST_SIGNALS_H_

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

namespace forensa::testing {

inline constexpr double kPi = 3.14159265358979323846;

inline std::vector<float> Sine(double hz, double seconds, int rate, double amp = 0.5,
                               double phase = 0.0) {
  const auto n = static_cast<std::size_t>(std::llround(seconds * rate));
  std::vector<float> x(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = static_cast<float>(amp * std::sin(2.0 * kPi * hz * i / rate + phase));
  }
  return x;
}

inline std::vector<float> WhiteNoise(std::size_t n, double stddev, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, stddev);
  std::vector<float> x(n);
  for (auto& v : x) v = static_cast<float>(g(rng));
  return x;
}

inline std::vector<float> ImpulseTrain(double hz, double seconds, int rate, double amp = 0.8) {
  const auto n = static_cast<std::size_t>(std::llround(seconds * rate));
  std::vector<float> x(n, 0.0f);
  const double period = rate / hz;
  for (double t = 0.0; t < n; t += period) {
    x[static_cast<std::size_t>(std::llround(t)) % n] = static_cast<float>(amp);
  }
  return x;
}

// Two-pole resonator y[n] = x[n] - a1 y[n-1] - a2 y[n-2] with poles at
// r exp(+-j theta), r = exp(-pi bw / rate), theta = 2 pi hz / rate.
struct Resonator {
  double a1 = 0.0;
  double a2 = 0.0;

  static Resonator Design(double hz, double bw, int rate) {
    const double r = std::exp(-kPi * bw / rate);
    const double theta = 2.0 * kPi * hz / rate;
    return {-2.0 * r * std::cos(theta), r * r};
  }

  // Pole angle recovered from the coefficients, in Hz.
  double PoleHz(int rate) const {
    const double r = std::sqrt(a2);
    return std::acos(-a1 / (2.0 * r)) * rate / (2.0 * kPi);
  }

  std::vector<float> Apply(const std::vector<float>& x) const {
    std::vector<float> y(x.size());
    double y1 = 0.0, y2 = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double v = x[i] - a1 * y1 - a2 * y2;
      y[i] = static_cast<float>(v);
      y2 = y1;
      y1 = v;
    }
    return y;
  }
};

inline void Normalize(std::vector<float>& x, double peak) {
  double m = 0.0;
  for (float v : x) m = std::max(m, static_cast<double>(std::fabs(v)));
  if (m == 0.0) return;
  for (auto& v : x) v = static_cast<float>(v * peak / m);
}

inline void AddInPlace(std::vector<float>& x, const std::vector<float>& y) {
  for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) x[i] += y[i];
}

// Gaussian pulses (sigma in samples) centered at fractional positions.
inline std::vector<float> PulseTrain(std::size_t n, const std::vector<double>& positions,
                                     const std::vector<double>& amplitudes, double sigma) {
  std::vector<float> x(n, 0.0f);
  for (std::size_t k = 0; k < positions.size(); ++k) {
    const double c = positions[k];
    const auto lo = static_cast<long>(std::floor(c - 6 * sigma));
    const auto hi = static_cast<long>(std::ceil(c + 6 * sigma));
    for (long i = std::max(0L, lo); i <= hi && i < static_cast<long>(n); ++i) {
      const double d = (i - c) / sigma;
      x[i] += static_cast<float>(amplitudes[k] * std::exp(-0.5 * d * d));
    }
  }
  return x;
}

class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("forensa-" + tag + "-" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

}  // namespace forensa::testing

#endif  // FORENSA_TESTS_TEST_SIGNALS_H_
