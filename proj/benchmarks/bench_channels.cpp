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

#include <cmath>

#include "ghzdecay/channels.hpp"
#include "ghzdecay/qstate.hpp"

namespace {

using namespace ghzdecay;

DensityMatrix ghz_density(int n) {
  const double w = std::sqrt(0.5);
  return density_from_pure(
      make_generalized_ghz(GhzSpec(n, 0, +1, cplx{w, 0}, cplx{w, 0})));
}

void BM_apply_depolarizing(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const DensityMatrix rho = ghz_density(n);
  const auto ch = SingleQubitChannel::depolarizing(0.3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(apply_local(rho, ch));
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_apply_depolarizing)->DenseRange(4, 10, 2);

void BM_apply_thermal(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const DensityMatrix rho = ghz_density(n);
  const auto ch = SingleQubitChannel::thermal(0.5, 0.3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(apply_local(rho, ch));
  }
}
BENCHMARK(BM_apply_thermal)->DenseRange(4, 10, 2);

}  // namespace
