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

// Serial reference kernels against their OpenMP counterparts. Argument is the
// clip length in seconds at 16 kHz.

#include <benchmark/benchmark.h>

#include <cmath>
#include <random>
#include <vector>

#include "forensa/audio_io.h"
#include "forensa/features.h"
#include "forensa/kernels.h"

namespace forensa {
namespace {

using kernels::Backend;

constexpr int kRate = 16000;

// Harmonic tone with a slow pitch glide plus a little noise.
std::vector<float> Voice(std::size_t n) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g(0.0, 0.01);
  std::vector<float> x(n);
  double phase = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double f0 = 120.0 + 20.0 * std::sin(2.0 * 3.14159265358979 * i / n);
    phase += 2.0 * 3.14159265358979 * f0 / kRate;
    double v = 0.0;
    for (int h = 1; h <= 8; ++h) v += std::sin(h * phase) / h;
    x[i] = static_cast<float>(0.3 * v + g(rng));
  }
  return x;
}

std::size_t Samples(const benchmark::State& state) {
  return static_cast<std::size_t>(state.range(0)) * kRate;
}

template <Backend B>
void BM_Resample(benchmark::State& state) {
  const std::vector<float> in = Voice(Samples(state) * 44100 / kRate);
  const auto k = kernels::DesignResampleKernel(44100, kRate);
  std::vector<float> out(kernels::ResampledLength(in.size(), k));
  for (auto _ : state) {
    kernels::Resample(B, k, in, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(in.size()));
}

template <Backend B>
void BM_PitchFrames(benchmark::State& state) {
  const std::vector<float> x = Voice(Samples(state));
  const auto grid = kernels::MakeFrameGrid(x.size(), 640, 160, kernels::Window::kRectangular);
  std::vector<kernels::PitchFrame> out(grid.n_frames);
  for (auto _ : state) {
    kernels::PitchFrames(B, x, grid, kernels::PitchParams{}, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(grid.n_frames));
}

template <Backend B>
void BM_SpectralFrames(benchmark::State& state) {
  const std::vector<float> x = Voice(Samples(state));
  const auto grid = kernels::MakeFrameGrid(x.size(), 400, 160, kernels::Window::kHann);
  std::vector<kernels::SpectralFrame> out(grid.n_frames);
  for (auto _ : state) {
    kernels::SpectralFrames(B, x, grid, kRate, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(grid.n_frames));
}

template <Backend B>
void BM_FormantFrames(benchmark::State& state) {
  const std::vector<float> x = Voice(Samples(state));
  const auto grid = kernels::MakeFrameGrid(x.size(), 400, 160, kernels::Window::kHann);
  const std::vector<std::uint8_t> voiced(grid.n_frames, 1);
  std::vector<kernels::FormantFrame> out(grid.n_frames);
  for (auto _ : state) {
    kernels::FormantFrames(B, x, grid, voiced, kernels::FormantParams{}, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(grid.n_frames));
}

template <Backend B>
void BM_ExtractEvidence(benchmark::State& state) {
  const AudioClip clip("bench", Voice(Samples(state)), kRate);
  FeatureConfig cfg;
  cfg.backend = B;
  for (auto _ : state) benchmark::DoNotOptimize(ExtractEvidence(clip, cfg));
}

BENCHMARK(BM_Resample<Backend::kSerial>)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Resample<Backend::kOpenMP>)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PitchFrames<Backend::kSerial>)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PitchFrames<Backend::kOpenMP>)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SpectralFrames<Backend::kSerial>)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SpectralFrames<Backend::kOpenMP>)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FormantFrames<Backend::kSerial>)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FormantFrames<Backend::kOpenMP>)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ExtractEvidence<Backend::kSerial>)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ExtractEvidence<Backend::kOpenMP>)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace forensa

BENCHMARK_MAIN();
