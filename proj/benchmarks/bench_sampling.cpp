// Copyright 2026 The ghz-decay Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "ghzdecay/rng.hpp"
#include "ghzdecay/sampling.hpp"

namespace {

using namespace ghzdecay;

void BM_haar_random_pure(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  GaussianStream gauss(7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(haar_random_pure(n, gauss));
  }
}
BENCHMARK(BM_haar_random_pure)->DenseRange(4, 12, 4);

void BM_run_sample_small(benchmark::State& state) {
  SampleConfig cfg;
  cfg.num_qubits = 5;
  cfg.sample_size = 50;
  cfg.channel = ChannelSpec{ChannelFamily::Depolarizing, 0.0, false};
  cfg.p_grid = {0.1, 0.3, 0.5};
  cfg.cut_policy = CutPolicy::MostBalanced;
  cfg.seed = 99;
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_sample(cfg, 1));
  }
}
BENCHMARK(BM_run_sample_small)->Unit(benchmark::kMillisecond);

}  // namespace
