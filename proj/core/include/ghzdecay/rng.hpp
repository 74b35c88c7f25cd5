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

namespace ghzdecay {

/// splitmix64: a counter-based 64-bit generator (fixed-increment state
/// walk plus a finalizing mix). Chosen over the std engines because its
/// output is pinned by this header, which keeps Monte-Carlo results
/// bit-identical across platforms and thread counts.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1), 53-bit resolution.
  double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform in (0, 1]; safe as a logarithm argument.
  double next_double_open() {
    return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;
  }

 private:
  std::uint64_t state_;
};

/// Stateless scramble (the 64-bit murmur3 finalizer).
std::uint64_t mix64(std::uint64_t z);

/// Independent-by-construction substream for (seed, index); sample i
/// of a run always sees the same stream no matter which worker draws
/// it.
std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index);

/// Standard normal deviates via Box-Muller on a SplitMix64 stream.
class GaussianStream {
 public:
  explicit GaussianStream(std::uint64_t stream_seed) : rng_(stream_seed) {}

  double next();

 private:
  SplitMix64 rng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace ghzdecay
