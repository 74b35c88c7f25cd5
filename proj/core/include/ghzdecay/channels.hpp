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

#include <optional>
#include <span>
#include <vector>

#include "ghzdecay/qstate.hpp"

namespace ghzdecay {

enum class ChannelFamily { Depolarizing, Dephasing, Thermal, Custom };

/// Dense 2x2 complex matrix; Kraus operators store their weights folded
/// in (e.g. sqrt(s_j) sigma_j for the depolarizing family).
struct Mat2 {
  cplx m00{0.0, 0.0}, m01{0.0, 0.0};
  cplx m10{0.0, 0.0}, m11{0.0, 0.0};
};

/// Single-qubit completely positive trace preserving map in Kraus form,
/// sum_j K_j^+ K_j = 1 within completeness_tolerance. Immutable.
class SingleQubitChannel {
 public:
  static constexpr double completeness_tolerance = 1e-12;

  /// sqrt(s_j) sigma_j with s_0 = 1 - 3p/4 and s_1 = s_2 = s_3 = p/4.
  /// Action: rho -> (1-p) rho + p/2.
  static SingleQubitChannel depolarizing(double p);

  /// {1*sqrt(1-p), |0><0| sqrt(p), |1><1| sqrt(p)}: kills off-diagonals
  /// by a factor (1-p), leaves populations untouched.
  static SingleQubitChannel dephasing(double p);

  /// Excitation exchange with a bath of mean occupation nbar; nbar = 0
  /// degenerates to amplitude damping.
  static SingleQubitChannel thermal(double nbar, double p);

  /// nbar -> infinity limit at fixed exchange probability p; both bath
  /// prefactors become 1/sqrt(2).
  static SingleQubitChannel thermal_diffusive(double p);

  /// Arbitrary Kraus set; completeness is validated.
  static SingleQubitChannel custom(std::vector<Mat2> kraus_ops);

  static SingleQubitChannel identity();

  const std::vector<Mat2>& kraus_ops() const { return kraus_; }
  ChannelFamily family() const { return family_; }
  std::optional<double> probability() const { return p_; }
  std::optional<double> nbar() const { return nbar_; }
  bool diffusive() const { return diffusive_; }

  /// True when the stored Kraus set is exactly {identity}; application
  /// is then a no-op.
  bool is_exact_identity() const;

 private:
  SingleQubitChannel(ChannelFamily family, std::optional<double> p,
                     std::optional<double> nbar, bool diffusive,
                     std::vector<Mat2> kraus);

  ChannelFamily family_;
  std::optional<double> p_;
  std::optional<double> nbar_;
  bool diffusive_;
  std::vector<Mat2> kraus_;
};

/// Converts physical time to the event probability p of a channel.
class TimeMap {
 public:
  enum class Model { ExponentialDecay, RabiOscillation, DiffusiveLinear };

  /// p = 1 - exp(-gamma t / 2).
  static TimeMap exponential_decay(double gamma);
  /// p = sin^2(omega t / 2).
  static TimeMap rabi_oscillation(double omega);
  /// p = 1 - exp(-rate t); the exchange probability of the diffusive
  /// bath, parameterized by the diffusion constant.
  static TimeMap diffusive_linear(double rate);

  Model model() const { return model_; }
  double parameter() const { return parameter_; }

  /// Clamped to [0, 1]; negative t is a domain error.
  double to_probability(double t) const;

 private:
  TimeMap(Model model, double parameter);
  Model model_;
  double parameter_;
};

inline double time_to_p(const TimeMap& map, double t) {
  return map.to_probability(t);
}

/// Applies the same channel to every qubit (the N-fold tensor product
/// map), sweeping one qubit at a time. Cost O(N |Kraus| 4^N); the
/// 4^N-term product Kraus set is never materialized.
DensityMatrix apply_local(const DensityMatrix& rho,
                          const SingleQubitChannel& channel);

/// Per-qubit channel list, length num_qubits; qubit q gets channels[q].
DensityMatrix apply_local_heterogeneous(
    const DensityMatrix& rho, std::span<const SingleQubitChannel> channels);

}  // namespace ghzdecay
