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

#include "ghzdecay/qstate.hpp"

namespace ghzdecay {

/// Number of ones in the binary string, i.e. excitations in |k⟩.
int hamming_weight(std::uint64_t k);

/// Multiplier on the initial entanglement for two-branch diagonal
/// states under N-fold local depolarizing: (1-p)^N.
double bound_depolarizing(int num_qubits, double p);

/// Same closed form under local dephasing; kept separate because the
/// two results have different scope (the dephasing one does not extend
/// to all two-qubit states).
double bound_dephasing(int num_qubits, double p);

/// State-dependent multiplier on the maximal entanglement for a
/// two-branch state alpha|k⟩ ± beta|k̄⟩ under local thermal baths:
///   |alpha|^2 g^(N-kappa) e^kappa + |beta|^2 g^kappa e^(N-kappa)
/// with g = 1 - nbar p/(2 nbar + 1), e = 1 - (nbar+1) p/(2 nbar + 1)
/// and kappa the excitation count of k.
double bound_thermal_state_dependent(cplx alpha, cplx beta, int kappa,
                                     int num_qubits, double nbar, double p);

/// The nbar -> infinity limit of the state-dependent multiplier; both
/// factors degenerate to (1 - p/2), so the state drops out.
double bound_thermal_state_dependent_diffusive(cplx alpha, cplx beta,
                                               int kappa, int num_qubits,
                                               double p);

/// State-independent thermal multiplier (1 - nbar p/(2 nbar + 1))^N.
double bound_thermal_uniform(int num_qubits, double nbar, double p);

/// Its nbar -> infinity limit, (1 - p/2)^N.
double bound_thermal_uniform_diffusive(int num_qubits, double p);

/// Probabilities of an even (plus) and odd (minus) number of
/// parity-flip events under N-fold depolarizing, evaluated by direct
/// binomial summation with compensated accumulation so the closed-form
/// identities stay an independent cross-check:
///   lambda_plus - lambda_minus = (1-p)^N
///   lambda_plus + lambda_minus = (1-p/2)^N
struct ParityWeights {
  double lambda_plus = 0.0;
  double lambda_minus = 0.0;
};
ParityWeights parity_weights(int num_qubits, double p);

/// Weight of the not-necessarily-separable contribution when a thermal
/// bath acts on a two-branch state, evaluated as the trace of the
/// explicitly constructed diagonal product operator against the state
/// (not via the closed form, which it must reproduce to 1e-12).
double lambda_ent_trace(const GhzSpec& ghz, double nbar, double p);

enum class BoundFamily {
  DepolarizingGhzDiag,
  DepolarizingTwoQubitAny,
  Dephasing,
  ThermalStateDependent,
  ThermalUniform,
};

/// One bound evaluation request; optional fields are required per
/// family (thermal families need nbar or the diffusive flag, the
/// state-dependent one also alpha/beta/kappa).
struct BoundQuery {
  BoundFamily family = BoundFamily::DepolarizingGhzDiag;
  int num_qubits = 2;
  double p = 0.0;
  std::optional<double> nbar;
  bool diffusive = false;
  std::optional<cplx> alpha;
  std::optional<cplx> beta;
  std::optional<int> kappa;
};

/// Dispatches to the closed forms above, validating the per-family
/// field requirements.
double evaluate_bound(const BoundQuery& query);

}  // namespace ghzdecay
