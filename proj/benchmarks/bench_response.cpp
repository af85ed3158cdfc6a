// Copyright 2026 The udw Authors
// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include "udw/profiles.hpp"
#include "udw/response.hpp"

namespace {

udw::DetectorConfig config(double a, double window) {
  udw::DetectorConfig cfg;
  cfg.gap = 1.0;
  cfg.profile = udw::modulate(udw::SpatialProfile::gaussian(5.0), 1.0);
  cfg.frame = udw::TrajectoryFrame(a, 1.0);
  cfg.tau_end = window;
  return cfg;
}

void BM_NumericTransform(benchmark::State& state) {
  const auto s = udw::numeric_spectral(udw::SpatialProfile::gaussian(1.0));
  double k = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(s(k));
    k = k > 10.0 ? 0.0 : k + 0.37;
  }
}
BENCHMARK(BM_NumericTransform);

void BM_KernelGeneral(benchmark::State& state) {
  const auto cfg = config(0.0, 20.0);
  const auto y = udw::WavepacketSpectrum::gaussian(1.0, 0.05);
  for (auto _ : state) benchmark::DoNotOptimize(udw::correlation_general(y, cfg, 3.0, 11.0));
}
BENCHMARK(BM_KernelGeneral)->Unit(benchmark::kMillisecond);

void BM_KernelSymmetric(benchmark::State& state) {
  const auto cfg = config(0.0, 20.0);
  const auto y = udw::WavepacketSpectrum::gaussian(1.0, 0.05);
  for (auto _ : state) benchmark::DoNotOptimize(udw::correlation_symmetric(y, cfg, 3.0, 11.0));
}
BENCHMARK(BM_KernelSymmetric)->Unit(benchmark::kMillisecond);

void BM_Probability(benchmark::State& state) {
  const double window = static_cast<double>(state.range(0));
  const auto cfg = config(0.0, window);
  const auto y = udw::WavepacketSpectrum::gaussian(1.0, 0.05);
  for (auto _ : state) benchmark::DoNotOptimize(udw::excitation_probability(y, cfg).value);
}
BENCHMARK(BM_Probability)->Arg(5)->Arg(20)->Unit(benchmark::kSecond)->Iterations(1);

}  // namespace
