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

#include "ghzdecay/entanglement.hpp"
#include "ghzdecay/rng.hpp"
#include "ghzdecay/sampling.hpp"

namespace {

using namespace ghzdecay;

void BM_negativity_most_balanced(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  GaussianStream gauss(42);
  const DensityMatrix rho = density_from_pure(haar_random_pure(n, gauss));
  const Bipartition cut = enumerate_cuts(n, CutPolicy::MostBalanced).front();
  for (auto _ : state) {
    benchmark::DoNotOptimize(negativity(rho, cut));
  }
}
BENCHMARK(BM_negativity_most_balanced)->DenseRange(4, 10, 2)
    ->Unit(benchmark::kMillisecond);

void BM_partial_transpose(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  GaussianStream gauss(43);
  const DensityMatrix rho = density_from_pure(haar_random_pure(n, gauss));
  const Bipartition cut = enumerate_cuts(n, CutPolicy::LeastBalanced).front();
  for (auto _ : state) {
    benchmark::DoNotOptimize(partial_transpose(rho, cut));
  }
}
BENCHMARK(BM_partial_transpose)->DenseRange(4, 10, 2);

}  // namespace
