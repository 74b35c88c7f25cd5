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

#include "ghzdecay/channels.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ghzdecay {

namespace {

void check_probability(double p) {
  if (!std::isfinite(p) || p < 0.0 || p > 1.0) {
    throw std::invalid_argument("probability must lie in [0, 1], got " +
                                std::to_string(p));
  }
}

bool is_zero(const Mat2& k) {
  return k.m00 == cplx{} && k.m01 == cplx{} && k.m10 == cplx{} &&
         k.m11 == cplx{};
}

bool is_identity(const Mat2& k) {
  return k.m00 == cplx{1.0, 0.0} && k.m01 == cplx{} && k.m10 == cplx{} &&
         k.m11 == cplx{1.0, 0.0};
}

/// Drops exact-zero operators; they contribute nothing and would only
/// slow the qubit sweep.
std::vector<Mat2> prune(std::vector<Mat2> ops) {
  std::vector<Mat2> out;
  out.reserve(ops.size());
  for (const Mat2& k : ops) {
    if (!is_zero(k)) {
      out.push_back(k);
    }
  }
  return out;
}

}  // namespace

SingleQubitChannel::SingleQubitChannel(ChannelFamily family,
                                       std::optional<double> p,
                                       std::optional<double> nbar,
                                       bool diffusive, std::vector<Mat2> kraus)
    : family_(family),
      p_(p),
      nbar_(nbar),
      diffusive_(diffusive),
      kraus_(std::move(kraus)) {
  if (kraus_.empty()) {
    throw std::invalid_argument("channel needs at least one Kraus operator");
  }
  for (const Mat2& k : kraus_) {
    for (cplx e : {k.m00, k.m01, k.m10, k.m11}) {
      if (!std::isfinite(e.real()) || !std::isfinite(e.imag())) {
        throw std::invalid_argument("Kraus entries must be finite");
      }
    }
  }
  // Completeness sum_j K_j^+ K_j = 1.
  cplx s00{}, s01{}, s11{};
  for (const Mat2& k : kraus_) {
    s00 += std::conj(k.m00) * k.m00 + std::conj(k.m10) * k.m10;
    s01 += std::conj(k.m00) * k.m01 + std::conj(k.m10) * k.m11;
    s11 += std::conj(k.m01) * k.m01 + std::conj(k.m11) * k.m11;
  }
  const double dev =
      std::max({std::abs(s00 - cplx{1.0, 0.0}), std::abs(s01),
                std::abs(s11 - cplx{1.0, 0.0})});
  if (dev > completeness_tolerance) {
    throw std::invalid_argument(
        "Kraus set violates completeness, max deviation " +
        std::to_string(dev));
  }
}

SingleQubitChannel SingleQubitChannel::depolarizing(double p) {
  check_probability(p);
  const double s0 = 1.0 - 3.0 * p / 4.0;
  const double s1 = p / 4.0;
  const double w0 = std::sqrt(s0);
  const double w1 = std::sqrt(s1);
  std::vector<Mat2> ops = {
      Mat2{{w0, 0}, {}, {}, {w0, 0}},        // sqrt(s0) * 1
      Mat2{{}, {w1, 0}, {w1, 0}, {}},        // sqrt(s1) * sigma_x
      Mat2{{}, {0, -w1}, {0, w1}, {}},       // sqrt(s2) * sigma_y
      Mat2{{w1, 0}, {}, {}, {-w1, 0}},       // sqrt(s3) * sigma_z
  };
  return SingleQubitChannel(ChannelFamily::Depolarizing, p, std::nullopt,
                            false, prune(std::move(ops)));
}

SingleQubitChannel SingleQubitChannel::dephasing(double p) {
  check_probability(p);
  const double w0 = std::sqrt(1.0 - p);
  const double w1 = std::sqrt(p);
  std::vector<Mat2> ops = {
      Mat2{{w0, 0}, {}, {}, {w0, 0}},  // 1 sqrt(1-p)
      Mat2{{w1, 0}, {}, {}, {}},       // |0><0| sqrt(p)
      Mat2{{}, {}, {}, {w1, 0}},       // |1><1| sqrt(p)
  };
  return SingleQubitChannel(ChannelFamily::Dephasing, p, std::nullopt, false,
                            prune(std::move(ops)));
}

SingleQubitChannel SingleQubitChannel::thermal(double nbar, double p) {
  check_probability(p);
  if (!std::isfinite(nbar) || nbar < 0.0) {
    throw std::invalid_argument("mean excitation nbar must be >= 0, got " +
                                std::to_string(nbar));
  }
  const double down = std::sqrt((nbar + 1.0) / (2.0 * nbar + 1.0));
  const double up = std::sqrt(nbar / (2.0 * nbar + 1.0));
  const double keep = std::sqrt(1.0 - p);
  const double jump = std::sqrt(p);
  std::vector<Mat2> ops = {
      Mat2{{down, 0}, {}, {}, {down * keep, 0}},  // K0
      Mat2{{}, {down * jump, 0}, {}, {}},         // K1 = |0><1|
      Mat2{{up * keep, 0}, {}, {}, {up, 0}},      // K2
      Mat2{{}, {}, {up * jump, 0}, {}},           // K3 = |1><0|
  };
  return SingleQubitChannel(ChannelFamily::Thermal, p, nbar, false,
                            prune(std::move(ops)));
}

SingleQubitChannel SingleQubitChannel::thermal_diffusive(double p) {
  check_probability(p);
  const double w = std::sqrt(0.5);
  const double keep = std::sqrt(1.0 - p);
  const double jump = std::sqrt(p);
  std::vector<Mat2> ops = {
      Mat2{{w, 0}, {}, {}, {w * keep, 0}},
      Mat2{{}, {w * jump, 0}, {}, {}},
      Mat2{{w * keep, 0}, {}, {}, {w, 0}},
      Mat2{{}, {}, {w * jump, 0}, {}},
  };
  return SingleQubitChannel(ChannelFamily::Thermal, p, std::nullopt, true,
                            prune(std::move(ops)));
}

SingleQubitChannel SingleQubitChannel::custom(std::vector<Mat2> kraus_ops) {
  return SingleQubitChannel(ChannelFamily::Custom, std::nullopt, std::nullopt,
                            false, std::move(kraus_ops));
}

SingleQubitChannel SingleQubitChannel::identity() {
  return custom({Mat2{{1.0, 0}, {}, {}, {1.0, 0}}});
}

bool SingleQubitChannel::is_exact_identity() const {
  return kraus_.size() == 1 && is_identity(kraus_.front());
}

TimeMap::TimeMap(Model model, double parameter)
    : model_(model), parameter_(parameter) {
  if (!std::isfinite(parameter) || parameter < 0.0) {
    throw std::invalid_argument("time-map rate must be >= 0, got " +
                                std::to_string(parameter));
  }
}

TimeMap TimeMap::exponential_decay(double gamma) {
  return TimeMap(Model::ExponentialDecay, gamma);
}

TimeMap TimeMap::rabi_oscillation(double omega) {
  return TimeMap(Model::RabiOscillation, omega);
}

TimeMap TimeMap::diffusive_linear(double rate) {
  return TimeMap(Model::DiffusiveLinear, rate);
}

double TimeMap::to_probability(double t) const {
  if (!std::isfinite(t) || t < 0.0) {
    throw std::invalid_argument("time must be >= 0, got " +
                                std::to_string(t));
  }
  double p = 0.0;
  switch (model_) {
    case Model::ExponentialDecay:
      p = 1.0 - std::exp(-parameter_ * t / 2.0);
      break;
    case Model::RabiOscillation: {
      const double s = std::sin(parameter_ * t / 2.0);
      p = s * s;
      break;
    }
    case Model::DiffusiveLinear:
      p = 1.0 - std::exp(-parameter_ * t);
      break;
  }
  return std::min(1.0, std::max(0.0, p));
}

namespace {

/// In-place sweep of one qubit: every 2x2 sub-block indexed by the
/// qubit's bit in (row, column) transforms independently as
/// B -> sum_j K_j B K_j^+.
void sweep_qubit(std::vector<cplx>& m, std::size_t dim, std::uint64_t stride,
                 const std::vector<Mat2>& kraus) {
  const std::size_t half = dim / 2;
  const std::uint64_t low_mask = stride - 1;
  for (std::size_t ri = 0; ri < half; ++ri) {
    const std::size_t r0 = ((ri & ~low_mask) << 1) | (ri & low_mask);
    const std::size_t r1 = r0 | stride;
    for (std::size_t ci = 0; ci < half; ++ci) {
      const std::size_t c0 = ((ci & ~low_mask) << 1) | (ci & low_mask);
      const std::size_t c1 = c0 | stride;
      const cplx b00 = m[r0 * dim + c0];
      const cplx b01 = m[r0 * dim + c1];
      const cplx b10 = m[r1 * dim + c0];
      const cplx b11 = m[r1 * dim + c1];
      cplx o00{}, o01{}, o10{}, o11{};
      for (const Mat2& k : kraus) {
        const cplx t00 = k.m00 * b00 + k.m01 * b10;
        const cplx t01 = k.m00 * b01 + k.m01 * b11;
        const cplx t10 = k.m10 * b00 + k.m11 * b10;
        const cplx t11 = k.m10 * b01 + k.m11 * b11;
        o00 += t00 * std::conj(k.m00) + t01 * std::conj(k.m01);
        o01 += t00 * std::conj(k.m10) + t01 * std::conj(k.m11);
        o10 += t10 * std::conj(k.m00) + t11 * std::conj(k.m01);
        o11 += t10 * std::conj(k.m10) + t11 * std::conj(k.m11);
      }
      m[r0 * dim + c0] = o00;
      m[r0 * dim + c1] = o01;
      m[r1 * dim + c0] = o10;
      m[r1 * dim + c1] = o11;
    }
  }
}

}  // namespace

DensityMatrix apply_local(const DensityMatrix& rho,
                          const SingleQubitChannel& channel) {
  if (channel.is_exact_identity()) {
    return rho;
  }
  const int n = rho.num_qubits();
  const std::size_t dim = rho.dim();
  std::vector<cplx> m = rho.elements();
  for (int q = 0; q < n; ++q) {
    sweep_qubit(m, dim, qubit_bit(n, q), channel.kraus_ops());
  }
  return DensityMatrix(n, std::move(m));
}

DensityMatrix apply_local_heterogeneous(
    const DensityMatrix& rho, std::span<const SingleQubitChannel> channels) {
  const int n = rho.num_qubits();
  if (channels.size() != static_cast<std::size_t>(n)) {
    throw std::invalid_argument(
        "channel list length " + std::to_string(channels.size()) +
        " does not match qubit count " + std::to_string(n));
  }
  const std::size_t dim = rho.dim();
  std::vector<cplx> m = rho.elements();
  for (int q = 0; q < n; ++q) {
    if (channels[q].is_exact_identity()) {
      continue;
    }
    sweep_qubit(m, dim, qubit_bit(n, q), channels[q].kraus_ops());
  }
  return DensityMatrix(n, std::move(m));
}

}  // namespace ghzdecay
