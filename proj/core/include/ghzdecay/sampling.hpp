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

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ghzdecay/channels.hpp"
#include "ghzdecay/entanglement.hpp"
#include "ghzdecay/qstate.hpp"
#include "ghzdecay/rng.hpp"

namespace ghzdecay {

/// Haar-uniform pure state: 2^N independent complex standard Gaussians,
/// normalized. Equivalent to the first column of a Haar unitary at
/// O(2^N) cost.
PureState haar_random_pure(int num_qubits, GaussianStream& gauss);

/// Equal-width bins over [0, hi]. A value exactly on an interior edge
/// belongs to the higher bin; the top edge belongs to the last bin.
struct Histogram {
  double lo = 0.0;
  double hi = 1.0;
  std::vector<std::uint64_t> counts;

  std::vector<double> edges() const;
};

Histogram histogram(std::span<const double> values, int num_bins,
                    double range_max);

/// Config-facing channel description: a noise family plus bath
/// parameters, instantiated per grid probability.
struct ChannelSpec {
  ChannelFamily family = ChannelFamily::Depolarizing;
  double nbar = 0.0;
  bool diffusive = false;

  SingleQubitChannel at(double p) const;

  bool operator==(const ChannelSpec&) const = default;
};

struct SampleConfig {
  int num_qubits = 2;
  std::uint64_t sample_size = 1;
  ChannelSpec channel;
  std::vector<double> p_grid;  // in [0,1], strictly increasing
  CutPolicy cut_policy = CutPolicy::MostBalanced;
  std::uint64_t seed = 0;
  double normalized_floor = 1e-9;
  int num_bins = 50;
  /// Deterministic initial-state override: every sample uses this
  /// state instead of a Haar draw (bound-tightness runs).
  std::optional<GhzSpec> initial_ghz;
};

struct CutPointStats {
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation (n-1)
  double min = 0.0;
  double max = 0.0;
  std::uint64_t included = 0;
  Histogram hist;
};

struct SampleStats {
  std::vector<double> p_grid;
  std::vector<Bipartition> cuts;
  /// Per cut: samples whose initial negativity sits at or below the
  /// floor (normalized value undefined there).
  std::vector<std::uint64_t> excluded;
  /// Samples dropped everywhere because the eigensolver failed on
  /// them; more than 1% aborts the run.
  std::uint64_t failed_samples = 0;
  /// Indexed [cut][p].
  std::vector<std::vector<CutPointStats>> by_cut;
};

/// Draws sample_size states (substream per sample index), records the
/// initial negativity per cut, evolves a fresh copy per grid p, and
/// aggregates normalized negativities. Output is bit-identical for any
/// thread count; threads <= 0 uses the hardware concurrency.
SampleStats run_sample(const SampleConfig& config, int threads = 0);

}  // namespace ghzdecay
