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

#include "ghzdecay/qstate.hpp"

#include <cmath>
#include <stdexcept>

#include "eig_internal.hpp"

namespace ghzdecay {

namespace {

void check_num_qubits(int num_qubits) {
  if (num_qubits < 1 || num_qubits > 62) {
    throw std::invalid_argument("num_qubits must be in [1, 62], got " +
                                std::to_string(num_qubits));
  }
}

void check_label(std::uint64_t label, int num_qubits) {
  if (label >= (std::uint64_t{1} << num_qubits)) {
    throw std::out_of_range("basis label " + std::to_string(label) +
                            " out of range for " +
                            std::to_string(num_qubits) + " qubits");
  }
}

void check_amplitude_pair(cplx alpha, cplx beta) {
  if (!std::isfinite(alpha.real()) || !std::isfinite(alpha.imag()) ||
      !std::isfinite(beta.real()) || !std::isfinite(beta.imag())) {
    throw std::invalid_argument("amplitudes must be finite");
  }
  if (std::norm(alpha) == 0.0 || std::norm(beta) == 0.0) {
    throw std::invalid_argument(
        "alpha and beta must both be nonzero (zero makes a product state)");
  }
  if (std::abs(std::norm(alpha) + std::norm(beta) - 1.0) > 1e-12) {
    throw std::invalid_argument("|alpha|^2 + |beta|^2 must equal 1");
  }
}

}  // namespace

std::uint64_t bitflip(std::uint64_t label, int num_qubits) {
  check_num_qubits(num_qubits);
  check_label(label, num_qubits);
  return ((std::uint64_t{1} << num_qubits) - 1) ^ label;
}

PureState::PureState(int num_qubits, std::vector<cplx> amplitudes)
    : num_qubits_(num_qubits), amplitudes_(std::move(amplitudes)) {
  check_num_qubits(num_qubits_);
  if (amplitudes_.size() != (std::size_t{1} << num_qubits_)) {
    throw std::invalid_argument("amplitude vector has length " +
                                std::to_string(amplitudes_.size()) +
                                ", expected 2^" +
                                std::to_string(num_qubits_));
  }
  double norm_sq = 0.0;
  for (const cplx& a : amplitudes_) {
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
      throw std::invalid_argument("amplitudes must be finite");
    }
    norm_sq += std::norm(a);
  }
  if (std::abs(norm_sq - 1.0) > norm_tolerance) {
    throw std::invalid_argument("state norm^2 deviates from 1 by " +
                                std::to_string(norm_sq - 1.0));
  }
}

PureState PureState::basis_state(int num_qubits, std::uint64_t label) {
  check_num_qubits(num_qubits);
  check_label(label, num_qubits);
  std::vector<cplx> amps(std::size_t{1} << num_qubits, cplx{0.0, 0.0});
  amps[label] = cplx{1.0, 0.0};
  return PureState(num_qubits, std::move(amps));
}

cplx inner_product(const PureState& a, const PureState& b) {
  if (a.num_qubits() != b.num_qubits()) {
    throw std::invalid_argument("inner product requires equal qubit counts");
  }
  cplx acc{0.0, 0.0};
  for (std::size_t i = 0; i < a.dim(); ++i) {
    acc += std::conj(a.amplitude(i)) * b.amplitude(i);
  }
  return acc;
}

DensityMatrix::DensityMatrix(int num_qubits, std::vector<cplx> elements)
    : num_qubits_(num_qubits),
      dim_(std::size_t{1} << num_qubits),
      elements_(std::move(elements)) {
  check_num_qubits(num_qubits_);
  if (elements_.size() != dim_ * dim_) {
    throw std::invalid_argument("element vector has length " +
                                std::to_string(elements_.size()) +
                                ", expected 4^" + std::to_string(num_qubits_));
  }
  double herm_dev = 0.0;
  for (std::size_t r = 0; r < dim_; ++r) {
    for (std::size_t c = r; c < dim_; ++c) {
      const cplx upper = elements_[r * dim_ + c];
      const cplx lower = elements_[c * dim_ + r];
      if (!std::isfinite(upper.real()) || !std::isfinite(upper.imag())) {
        throw std::invalid_argument("matrix entries must be finite");
      }
      herm_dev = std::max(herm_dev, std::abs(upper - std::conj(lower)));
    }
  }
  if (herm_dev > herm_tolerance) {
    throw std::invalid_argument("matrix is not Hermitian, max |rho - rho^+| = " +
                                std::to_string(herm_dev));
  }
  const cplx tr = trace();
  if (std::abs(tr - cplx{1.0, 0.0}) > trace_tolerance) {
    throw std::invalid_argument("trace deviates from 1 by " +
                                std::to_string(std::abs(tr - cplx{1.0, 0.0})));
  }
}

cplx DensityMatrix::trace() const {
  cplx acc{0.0, 0.0};
  for (std::size_t r = 0; r < dim_; ++r) {
    acc += elements_[r * dim_ + r];
  }
  return acc;
}

double DensityMatrix::purity() const {
  // tr(rho^2) = sum_{r,c} |rho_{rc}|^2 for Hermitian rho.
  double acc = 0.0;
  for (const cplx& e : elements_) {
    acc += std::norm(e);
  }
  return acc;
}

double DensityMatrix::min_eigenvalue() const {
  const auto evs = internal::hermitian_eigenvalues(elements_.data(), dim_);
  return evs.front();
}

GhzSpec::GhzSpec(int nq, std::uint64_t label_in, int parity_in, cplx alpha_in,
                 cplx beta_in)
    : num_qubits(nq),
      label(label_in),
      parity(parity_in),
      alpha(alpha_in),
      beta(beta_in) {
  check_num_qubits(num_qubits);
  if (num_qubits < 2) {
    throw std::invalid_argument(
        "two-branch superpositions need at least 2 qubits");
  }
  check_label(label, num_qubits);
  if (parity != 1 && parity != -1) {
    throw std::invalid_argument("parity must be +1 or -1");
  }
  check_amplitude_pair(alpha, beta);
  const std::uint64_t flipped = bitflip(label, num_qubits);
  if (label > flipped) {
    label = flipped;
    std::swap(alpha, beta);  // same ray up to a global phase
  }
}

GhzMixtureSpec::GhzMixtureSpec(
    int nq, cplx alpha_in, cplx beta_in,
    std::map<std::pair<std::uint64_t, int>, double> weights_in)
    : num_qubits(nq),
      alpha(alpha_in),
      beta(beta_in),
      weights(std::move(weights_in)) {
  check_num_qubits(num_qubits);
  if (num_qubits < 2) {
    throw std::invalid_argument("two-branch mixtures need at least 2 qubits");
  }
  check_amplitude_pair(alpha, beta);
  if (weights.empty()) {
    throw std::invalid_argument("mixture needs at least one weight");
  }
  double total = 0.0;
  for (const auto& [key, lambda] : weights) {
    check_label(key.first, num_qubits);
    if (key.second != 1 && key.second != -1) {
      throw std::invalid_argument("mixture parity must be +1 or -1");
    }
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
      throw std::invalid_argument("mixture weights must be >= 0");
    }
    total += lambda;
  }
  if (std::abs(total - 1.0) > weight_tolerance) {
    throw std::invalid_argument("mixture weights sum to " +
                                std::to_string(total) + ", expected 1");
  }
}

PureState make_generalized_ghz(const GhzSpec& spec) {
  std::vector<cplx> amps(std::size_t{1} << spec.num_qubits, cplx{0.0, 0.0});
  const std::uint64_t flipped = bitflip(spec.label, spec.num_qubits);
  amps[spec.label] = spec.alpha;
  amps[flipped] = static_cast<double>(spec.parity) * spec.beta;
  return PureState(spec.num_qubits, std::move(amps));
}

DensityMatrix make_ghz_diagonal(const GhzMixtureSpec& spec) {
  const std::size_t dim = std::size_t{1} << spec.num_qubits;
  std::vector<cplx> rho(dim * dim, cplx{0.0, 0.0});
  // Each projector touches only the four entries on the (k, k̄) pair,
  // so the mixture stays exactly zero elsewhere.
  for (const auto& [key, lambda] : spec.weights) {
    const std::uint64_t k = key.first;
    const std::uint64_t kf = bitflip(k, spec.num_qubits);
    const cplx a = spec.alpha;
    const cplx b = static_cast<double>(key.second) * spec.beta;
    rho[k * dim + k] += lambda * std::norm(a);
    rho[kf * dim + kf] += lambda * std::norm(b);
    rho[k * dim + kf] += lambda * a * std::conj(b);
    rho[kf * dim + k] += lambda * b * std::conj(a);
  }
  return DensityMatrix(spec.num_qubits, std::move(rho));
}

DensityMatrix density_from_pure(const PureState& psi) {
  const std::size_t dim = psi.dim();
  std::vector<cplx> rho(dim * dim);
  for (std::size_t r = 0; r < dim; ++r) {
    const cplx ar = psi.amplitude(r);
    for (std::size_t c = 0; c < dim; ++c) {
      rho[r * dim + c] = ar * std::conj(psi.amplitude(c));
    }
  }
  return DensityMatrix(psi.num_qubits(), std::move(rho));
}

}  // namespace ghzdecay
