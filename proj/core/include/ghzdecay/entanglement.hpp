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
#include <vector>

#include "ghzdecay/qstate.hpp"

namespace ghzdecay {

/// Split of N qubits into parts A|B. side_a_mask is a bitmask over
/// qubit indices (bit i set puts qubit i in part A; qubit 0 is still
/// the most significant *label* bit).
///
/// Canonical form, established by the constructor: |A| <= |B|, and for
/// equal sizes the side containing qubit 0 is A.
class Bipartition {
 public:
  Bipartition(int num_qubits, std::uint64_t side_a_mask);

  int num_qubits() const { return num_qubits_; }
  std::uint64_t side_a_mask() const { return side_a_; }
  int side_a_size() const;
  std::size_t dim_a() const { return std::size_t{1} << side_a_size(); }
  std::size_t dim_b() const {
    return std::size_t{1} << (num_qubits_ - side_a_size());
  }
  /// The A-side mask translated to basis-label bit positions.
  std::uint64_t label_mask_a() const;

  bool operator==(const Bipartition&) const = default;

 private:
  int num_qubits_;
  std::uint64_t side_a_;
};

/// Hermitian but not necessarily positive operator (the partial
/// transpose of a state), row major.
struct HermitianMatrix {
  int num_qubits = 1;
  std::vector<cplx> elements;

  std::size_t dim() const { return std::size_t{1} << num_qubits; }
  cplx operator()(std::size_t row, std::size_t col) const {
    return elements[row * dim() + col];
  }
};

struct NegativityResult {
  /// Sum of |negative eigenvalues| of the partial transpose, clamped
  /// at zero.
  double value = 0.0;
  /// Filled by normalized-negativity contexts, otherwise empty.
  std::optional<double> normalized;
  /// Most negative partial-transpose eigenvalue (diagnostic; keeps the
  /// information the clamp removes).
  double eigenvalue_floor = 0.0;
};

/// Transposes the part-A sub-indices:
/// out[(rA,rB),(cA,cB)] = in[(cA,rB),(rA,cB)]. Trace-preserving,
/// Hermitian, involutive.
HermitianMatrix partial_transpose(const DensityMatrix& rho,
                                  const Bipartition& cut);

/// N = (||rho^T_A||_1 - 1) / 2, computed as the absolute sum of
/// negative partial-transpose eigenvalues via a full Hermitian
/// eigendecomposition. Zero for PPT states. Throws numeric_error if
/// the eigensolver fails, never silently returns zero.
NegativityResult negativity(const DensityMatrix& rho, const Bipartition& cut);

/// N(evolved) / N(initial); empty when the initial negativity is at or
/// below the floor (an undefined sample, to be counted by callers).
std::optional<double> normalized_negativity(const DensityMatrix& evolved,
                                            const DensityMatrix& initial,
                                            const Bipartition& cut,
                                            double floor = 1e-9);

/// (d_A - 1) / 2, the negativity of a maximally entangled state across
/// the cut.
double max_negativity(const Bipartition& cut);

enum class CutPolicy { MostBalanced, LeastBalanced, All };

/// MostBalanced: the ceil(N/2) | floor(N/2) split of the leading
/// qubits. LeastBalanced: qubit 0 against the rest. All: every
/// canonical bipartition, ordered by mask.
std::vector<Bipartition> enumerate_cuts(int num_qubits, CutPolicy policy);

}  // namespace ghzdecay
