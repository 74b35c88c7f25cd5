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

#include "ghzdecay/sampling.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>

#include "ghzdecay/errors.hpp"

namespace ghzdecay {

PureState haar_random_pure(int num_qubits, GaussianStream& gauss) {
  const std::size_t dim = std::size_t{1} << num_qubits;
  std::vector<cplx> amps(dim);
  double norm_sq = 0.0;
  for (std::size_t i = 0; i < dim; ++i) {
    const double re = gauss.next();
    const double im = gauss.next();
    amps[i] = cplx{re, im};
    norm_sq += re * re + im * im;
  }
  const double inv_norm = 1.0 / std::sqrt(norm_sq);
  for (cplx& a : amps) {
    a *= inv_norm;
  }
  return PureState(num_qubits, std::move(amps));
}

std::vector<double> Histogram::edges() const {
  std::vector<double> e(counts.size() + 1);
  const double width = (hi - lo) / static_cast<double>(counts.size());
  for (std::size_t i = 0; i <= counts.size(); ++i) {
    e[i] = lo + width * static_cast<double>(i);
  }
  e.back() = hi;
  return e;
}

Histogram histogram(std::span<const double> values, int num_bins,
                    double range_max) {
  if (num_bins < 1) {
    throw std::invalid_argument("histogram needs at least one bin");
  }
  if (!(range_max > 0.0) || !std::isfinite(range_max)) {
    throw std::invalid_argument("histogram range must be positive");
  }
  Histogram h;
  h.lo = 0.0;
  h.hi = range_max;
  h.counts.assign(static_cast<std::size_t>(num_bins), 0);
  for (double v : values) {
    auto bin = static_cast<std::int64_t>(
        std::floor(v / range_max * static_cast<double>(num_bins)));
    if (bin < 0) {
      bin = 0;
    }
    if (bin >= num_bins) {
      bin = num_bins - 1;  // the top edge belongs to the last bin
    }
    ++h.counts[static_cast<std::size_t>(bin)];
  }
  return h;
}

SingleQubitChannel ChannelSpec::at(double p) const {
  switch (family) {
    case ChannelFamily::Depolarizing:
      return SingleQubitChannel::depolarizing(p);
    case ChannelFamily::Dephasing:
      return SingleQubitChannel::dephasing(p);
    case ChannelFamily::Thermal:
      return diffusive ? SingleQubitChannel::thermal_diffusive(p)
                       : SingleQubitChannel::thermal(nbar, p);
    case ChannelFamily::Custom:
      break;
  }
  throw std::invalid_argument("channel spec must name a noise family");
}

namespace {

void validate(const SampleConfig& config) {
  if (config.num_qubits < 2) {
    throw std::invalid_argument("sampling needs at least 2 qubits");
  }
  if (config.sample_size < 1) {
    throw std::invalid_argument("sample_size must be >= 1");
  }
  if (config.p_grid.empty()) {
    throw std::invalid_argument("p_grid must not be empty");
  }
  double prev = -1.0;
  for (double p : config.p_grid) {
    if (!std::isfinite(p) || p < 0.0 || p > 1.0) {
      throw std::invalid_argument("p_grid values must lie in [0, 1]");
    }
    if (p <= prev) {
      throw std::invalid_argument("p_grid must be strictly increasing");
    }
    prev = p;
  }
  if (config.initial_ghz &&
      config.initial_ghz->num_qubits != config.num_qubits) {
    throw std::invalid_argument(
        "initial-state override does not match num_qubits");
  }
  if (config.num_bins < 1) {
    throw std::invalid_argument("num_bins must be >= 1");
  }
  if (!(config.normalized_floor > 0.0)) {
    throw std::invalid_argument("normalized_floor must be > 0");
  }
}

/// Runs fn(i) for i in [0, count) on the requested number of threads.
/// Work items only write to their own output slots, so scheduling
/// cannot affect results.
template <typename Fn>
void parallel_for(std::uint64_t count, int threads, const Fn& fn) {
  unsigned requested = threads > 0
                           ? static_cast<unsigned>(threads)
                           : std::max(1u, std::thread::hardware_concurrency());
  requested = static_cast<unsigned>(
      std::min<std::uint64_t>(requested, count == 0 ? 1 : count));
  if (requested <= 1) {
    for (std::uint64_t i = 0; i < count; ++i) {
      fn(i);
    }
    return;
  }
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto worker = [&]() {
    while (true) {
      const std::uint64_t i = next.fetch_add(1);
      if (i >= count) {
        return;
      }
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) {
          first_error = std::current_exception();
        }
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(requested);
  for (unsigned t = 0; t < requested; ++t) {
    pool.emplace_back(worker);
  }
  for (std::thread& t : pool) {
    t.join();
  }
  if (first_error) {
    std::rethrow_exception(first_error);
  }
}

}  // namespace

SampleStats run_sample(const SampleConfig& config, int threads) {
  validate(config);

  SampleStats stats;
  stats.p_grid = config.p_grid;
  stats.cuts = enumerate_cuts(config.num_qubits, config.cut_policy);
  const std::size_t num_cuts = stats.cuts.size();
  const std::size_t num_p = config.p_grid.size();
  const std::uint64_t samples = config.sample_size;

  // Per-sample channels: the grid is shared across samples.
  std::vector<SingleQubitChannel> channels;
  channels.reserve(num_p);
  for (double p : config.p_grid) {
    channels.push_back(config.channel.at(p));
  }

  std::vector<double> initial_neg(samples * num_cuts, 0.0);
  std::vector<double> evolved_neg(samples * num_p * num_cuts, 0.0);
  std::vector<std::uint8_t> failed(samples, 0);

  parallel_for(samples, threads, [&](std::uint64_t i) {
    try {
      GaussianStream gauss(substream_seed(config.seed, i));
      const PureState psi = config.initial_ghz
                                ? make_generalized_ghz(*config.initial_ghz)
                                : haar_random_pure(config.num_qubits, gauss);
      const DensityMatrix rho0 = density_from_pure(psi);
      for (std::size_t c = 0; c < num_cuts; ++c) {
        initial_neg[i * num_cuts + c] = negativity(rho0, stats.cuts[c]).value;
      }
      for (std::size_t pi = 0; pi < num_p; ++pi) {
        // p = 0 is the identity map for every family; skipping the
        // sweep keeps the p = 0 ratio exactly 1.
        const DensityMatrix rho_p = config.p_grid[pi] == 0.0
                                        ? rho0
                                        : apply_local(rho0, channels[pi]);
        for (std::size_t c = 0; c < num_cuts; ++c) {
          evolved_neg[(i * num_p + pi) * num_cuts + c] =
              negativity(rho_p, stats.cuts[c]).value;
        }
      }
    } catch (const numeric_error&) {
      failed[i] = 1;
    }
  });

  stats.failed_samples = 0;
  for (std::uint64_t i = 0; i < samples; ++i) {
    stats.failed_samples += failed[i];
  }
  if (100 * stats.failed_samples > samples) {
    throw numeric_error("eigensolver failed on " +
                        std::to_string(stats.failed_samples) + " of " +
                        std::to_string(samples) + " samples (> 1%)");
  }

  stats.excluded.assign(num_cuts, 0);
  stats.by_cut.assign(num_cuts, std::vector<CutPointStats>(num_p));
  std::vector<double> values;
  values.reserve(samples);
  for (std::size_t c = 0; c < num_cuts; ++c) {
    for (std::uint64_t i = 0; i < samples; ++i) {
      if (!failed[i] &&
          initial_neg[i * num_cuts + c] <= config.normalized_floor) {
        ++stats.excluded[c];
      }
    }
    for (std::size_t pi = 0; pi < num_p; ++pi) {
      values.clear();
      for (std::uint64_t i = 0; i < samples; ++i) {
        if (failed[i]) {
          continue;
        }
        const double n0 = initial_neg[i * num_cuts + c];
        if (n0 <= config.normalized_floor) {
          continue;
        }
        values.push_back(evolved_neg[(i * num_p + pi) * num_cuts + c] / n0);
      }
      CutPointStats& point = stats.by_cut[c][pi];
      point.included = values.size();
      if (!values.empty()) {
        double sum = 0.0, vmin = values.front(), vmax = values.front();
        for (double v : values) {
          sum += v;
          vmin = std::min(vmin, v);
          vmax = std::max(vmax, v);
        }
        point.mean = sum / static_cast<double>(values.size());
        point.min = vmin;
        point.max = vmax;
        if (values.size() > 1) {
          double ss = 0.0;
          for (double v : values) {
            const double d = v - point.mean;
            ss += d * d;
          }
          point.stddev =
              std::sqrt(ss / static_cast<double>(values.size() - 1));
        }
        const double range =
            vmax > 0.0 ? 1.05 * vmax : 1.0;  // degenerate all-zero case
        point.hist = histogram(values, config.num_bins, range);
      } else {
        point.hist = histogram({}, config.num_bins, 1.0);
      }
    }
  }
  return stats;
}

}  // namespace ghzdecay
