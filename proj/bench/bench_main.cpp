// Copyright 2026 The hlsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Serial reference kernels vs the OpenMP data-parallel ones, over the three
// point-parallel hot paths. Outputs are bitwise identical by construction, so
// the only interesting number here is the wall-clock ratio.

#include <benchmark/benchmark.h>

#include <vector>

#include "hlsim/observables.hpp"
#include "hlsim/sweep.hpp"

using namespace hlsim;

namespace {

ComputeOptions opts_for(Exec exec) {
  ComputeOptions opts;
  opts.exec = exec;
  return opts;
}

void bm_spectrum(benchmark::State& state, Exec exec) {
  const auto model = ModelSpec::lambda(0.5, 200);
  const auto obs = compute_observables(model);
  std::vector<double> omegas;
  for (int i = 0; i < 64; ++i) {
    omegas.push_back(-2.0 * obs.linewidth_gap + 4.0 * obs.linewidth_gap * i / 63.0);
  }
  const auto opts = opts_for(exec);
  for (auto _ : state) {
    auto values = spectrum(model, omegas, opts);
    benchmark::DoNotOptimize(values.data());
  }
}

void bm_correlation_sample(benchmark::State& state, Exec exec) {
  const auto model = ModelSpec::lambda(0.25, 256);
  std::vector<double> taus;
  for (int i = 0; i < 2048; ++i) taus.push_back(0.02 * i);
  const auto opts = opts_for(exec);
  for (auto _ : state) {
    auto series = g1_correlation(model, taus, opts);
    benchmark::DoNotOptimize(series.values.data());
  }
}

void bm_sweep_param(benchmark::State& state, Exec exec) {
  std::vector<double> params;
  for (int i = 0; i < 9; ++i) params.push_back(0.125 * i);
  const auto opts = opts_for(exec);
  for (auto _ : state) {
    auto rows = sweep_parameter(Family::Lambda, 200, params, opts);
    benchmark::DoNotOptimize(rows.data());
  }
}

}  // namespace

BENCHMARK_CAPTURE(bm_spectrum, serial, Exec::Serial)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bm_spectrum, openmp, Exec::Parallel)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bm_correlation_sample, serial, Exec::Serial)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bm_correlation_sample, openmp, Exec::Parallel)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bm_sweep_param, serial, Exec::Serial)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bm_sweep_param, openmp, Exec::Parallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
