// Copyright 2026 The udw Authors
// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include <cmath>

#include "udw/quadrature.hpp"
#include "udw/thread_pool.hpp"

namespace {

using udw::quad::Complex;

void BM_Oscillatory1D(benchmark::State& state) {
  const double lambda = static_cast<double>(state.range(0));
  udw::quad::QuadratureSpec spec;
  spec.rel_tol = 1e-10;
  spec.max_panels = 1000000;
  spec.phase_hint = udw::quad::constant_phase_rate(lambda);
  auto f = [lambda](double x) { return std::exp(-x) * std::polar(1.0, lambda * x); };
  std::size_t evals = 0;
  for (auto _ : state) {
    const auto r = udw::quad::integrate_1d(f, 0.0, 10.0, spec);
    evals = r.evaluations;
    benchmark::DoNotOptimize(r.value);
  }
  state.counters["evaluations"] = static_cast<double>(evals);
}
BENCHMARK(BM_Oscillatory1D)->RangeMultiplier(10)->Range(10, 10000);

void BM_Hermitian2D(benchmark::State& state) {
  const double omega = static_cast<double>(state.range(0));
  udw::quad::QuadratureSpec spec;
  spec.rel_tol = 1e-9;
  spec.max_panels = 1000000;
  auto f = [omega](double x, double y) {
    return std::polar(1.0, omega * (x - y)) / (1.0 + 0.1 * (x - y) * (x - y));
  };
  for (auto _ : state) {
    const auto r = udw::quad::integrate_2d(f, 0.0, 20.0, spec, udw::quad::Symmetry::Hermitian);
    benchmark::DoNotOptimize(r.value);
  }
}
BENCHMARK(BM_Hermitian2D)->Arg(1)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_Hermitian2DPool(benchmark::State& state) {
  udw::ThreadPool pool(static_cast<std::size_t>(state.range(0)));
  udw::quad::QuadratureSpec spec;
  spec.rel_tol = 1e-9;
  spec.max_panels = 1000000;
  auto f = [](double x, double y) {
    return std::polar(1.0, 5.0 * (x - y)) / (1.0 + 0.1 * (x - y) * (x - y));
  };
  for (auto _ : state) {
    const auto r = udw::quad::integrate_2d(f, 0.0, 20.0, spec, udw::quad::Symmetry::Hermitian, &pool);
    benchmark::DoNotOptimize(r.value);
  }
}
BENCHMARK(BM_Hermitian2DPool)->Arg(1)->Arg(3)->Unit(benchmark::kMillisecond);

}  // namespace
