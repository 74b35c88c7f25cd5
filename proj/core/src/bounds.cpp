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

#include "ghzdecay/bounds.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace ghzdecay {

namespace {

void check_probability(double p) {
  if (!std::isfinite(p) || p < 0.0 || p > 1.0) {
    throw std::invalid_argument("probability must lie in [0, 1], got " +
                                std::to_string(p));
  }
}

void check_num_qubits(int n) {
  if (n < 1) {
    throw std::invalid_argument("qubit count must be >= 1");
  }
}

void check_nbar(double nbar) {
  if (!std::isfinite(nbar) || nbar < 0.0) {
    throw std::invalid_argument("mean excitation nbar must be >= 0, got " +
                                std::to_string(nbar));
  }
}

void check_amplitudes(cplx alpha, cplx beta) {
  if (std::abs(std::norm(alpha) + std::norm(beta) - 1.0) > 1e-12) {
    throw std::invalid_argument("|alpha|^2 + |beta|^2 must equal 1");
  }
}

/// Neumaier-compensated accumulator.
struct CompensatedSum {
  double sum = 0.0;
  double carry = 0.0;
  void add(double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      carry += (sum - t) + x;
    } else {
      carry += (x - t) + sum;
    }
    sum = t;
  }
  double value() const { return sum + carry; }
};

}  // namespace

int hamming_weight(std::uint64_t k) { return std::popcount(k); }

double bound_depolarizing(int num_qubits, double p) {
  check_num_qubits(num_qubits);
  check_probability(p);
  return std::pow(1.0 - p, num_qubits);
}

double bound_dephasing(int num_qubits, double p) {
  check_num_qubits(num_qubits);
  check_probability(p);
  return std::pow(1.0 - p, num_qubits);
}

double bound_thermal_state_dependent(cplx alpha, cplx beta, int kappa,
                                     int num_qubits, double nbar, double p) {
  check_num_qubits(num_qubits);
  check_probability(p);
  check_nbar(nbar);
  check_amplitudes(alpha, beta);
  if (kappa < 0 || kappa > num_qubits) {
    throw std::invalid_argument("kappa must lie in [0, N]");
  }
  const double ground = 1.0 - nbar * p / (2.0 * nbar + 1.0);
  const double excited = 1.0 - (nbar + 1.0) * p / (2.0 * nbar + 1.0);
  return std::norm(alpha) * std::pow(ground, num_qubits - kappa) *
             std::pow(excited, kappa) +
         std::norm(beta) * std::pow(ground, kappa) *
             std::pow(excited, num_qubits - kappa);
}

double bound_thermal_state_dependent_diffusive(cplx alpha, cplx beta,
                                               int kappa, int num_qubits,
                                               double p) {
  check_num_qubits(num_qubits);
  check_probability(p);
  check_amplitudes(alpha, beta);
  if (kappa < 0 || kappa > num_qubits) {
    throw std::invalid_argument("kappa must lie in [0, N]");
  }
  return std::pow(1.0 - p / 2.0, num_qubits);
}

double bound_thermal_uniform(int num_qubits, double nbar, double p) {
  check_num_qubits(num_qubits);
  check_probability(p);
  check_nbar(nbar);
  return std::pow(1.0 - nbar * p / (2.0 * nbar + 1.0), num_qubits);
}

double bound_thermal_uniform_diffusive(int num_qubits, double p) {
  check_num_qubits(num_qubits);
  check_probability(p);
  return std::pow(1.0 - p / 2.0, num_qubits);
}

ParityWeights parity_weights(int num_qubits, double p) {
  check_num_qubits(num_qubits);
  check_probability(p);
  const double s0 = 1.0 - 3.0 * p / 4.0;
  const double s3 = p / 4.0;
  CompensatedSum even;
  CompensatedSum odd;
  double binom = 1.0;  // C(N, M), exact in double for the N in scope
  for (int m = 0; m <= num_qubits; ++m) {
    const double term =
        binom * std::pow(s0, num_qubits - m) * std::pow(s3, m);
    if (m % 2 == 0) {
      even.add(term);
    } else {
      odd.add(term);
    }
    binom = binom * (num_qubits - m) / (m + 1);
  }
  return ParityWeights{even.value(), odd.value()};
}

double lambda_ent_trace(const GhzSpec& ghz, double nbar, double p) {
  check_probability(p);
  check_nbar(nbar);
  const double ground = 1.0 - nbar * p / (2.0 * nbar + 1.0);
  const double excited = 1.0 - (nbar + 1.0) * p / (2.0 * nbar + 1.0);
  // N-fold tensor product of diag(ground, excited), built up factor by
  // factor.
  std::vector<double> diag{1.0};
  for (int q = 0; q < ghz.num_qubits; ++q) {
    std::vector<double> next(diag.size() * 2);
    for (std::size_t i = 0; i < diag.size(); ++i) {
      next[2 * i] = diag[i] * ground;
      next[2 * i + 1] = diag[i] * excited;
    }
    diag = std::move(next);
  }
  const DensityMatrix rho = density_from_pure(make_generalized_ghz(ghz));
  double trace = 0.0;
  for (std::size_t m = 0; m < rho.dim(); ++m) {
    trace += diag[m] * rho(m, m).real();
  }
  return trace;
}

double evaluate_bound(const BoundQuery& q) {
  auto need_bath = [&]() {
    if (!q.diffusive && !q.nbar.has_value()) {
      throw std::invalid_argument(
          "thermal bounds need nbar or the diffusive flag");
    }
  };
  switch (q.family) {
    case BoundFamily::DepolarizingGhzDiag:
      return bound_depolarizing(q.num_qubits, q.p);
    case BoundFamily::DepolarizingTwoQubitAny:
      if (q.num_qubits != 2) {
        throw std::invalid_argument(
            "the any-state depolarizing bound is a two-qubit result");
      }
      return bound_depolarizing(2, q.p);
    case BoundFamily::Dephasing:
      return bound_dephasing(q.num_qubits, q.p);
    case BoundFamily::ThermalStateDependent: {
      need_bath();
      if (!q.alpha || !q.beta || !q.kappa) {
        throw std::invalid_argument(
            "the state-dependent thermal bound needs alpha, beta and kappa");
      }
      if (q.diffusive) {
        return bound_thermal_state_dependent_diffusive(*q.alpha, *q.beta,
                                                       *q.kappa, q.num_qubits,
                                                       q.p);
      }
      return bound_thermal_state_dependent(*q.alpha, *q.beta, *q.kappa,
                                           q.num_qubits, *q.nbar, q.p);
    }
    case BoundFamily::ThermalUniform:
      need_bath();
      if (q.diffusive) {
        return bound_thermal_uniform_diffusive(q.num_qubits, q.p);
      }
      return bound_thermal_uniform(q.num_qubits, *q.nbar, q.p);
  }
  throw std::invalid_argument("unknown bound family");
}

}  // namespace ghzdecay
