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

#include <complex>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

namespace ghzdecay {

using cplx = std::complex<double>;

// Basis-label convention: qubit 0 is the most significant bit of the
// label, so the three-qubit basis state with qubit pattern 010 carries
// label 2. All bit twiddling in the library goes through these helpers.
inline std::uint64_t qubit_bit(int num_qubits, int qubit) {
  return std::uint64_t{1} << (num_qubits - 1 - qubit);
}

/// Bit-wise complement of a basis label within an N-qubit register.
/// Involutive: bitflip(bitflip(k)) == k.
std::uint64_t bitflip(std::uint64_t label, int num_qubits);

/// ⟨a|b⟩ for two states of equal dimension.
cplx inner_product(const class PureState& a, const class PureState& b);

/// Unit-norm complex amplitude vector over the 2^N computational basis
/// labels. Immutable after construction.
class PureState {
 public:
  static constexpr double norm_tolerance = 1e-12;

  /// Validates length 2^num_qubits and unit norm (within norm_tolerance).
  PureState(int num_qubits, std::vector<cplx> amplitudes);

  /// |label⟩.
  static PureState basis_state(int num_qubits, std::uint64_t label);

  int num_qubits() const { return num_qubits_; }
  std::size_t dim() const { return amplitudes_.size(); }
  const std::vector<cplx>& amplitudes() const { return amplitudes_; }
  cplx amplitude(std::size_t index) const { return amplitudes_[index]; }

 private:
  int num_qubits_;
  std::vector<cplx> amplitudes_;
};

/// Dense 2^N x 2^N Hermitian unit-trace operator, row major.
///
/// Construction always checks Hermiticity and trace; positive
/// semidefiniteness costs a full eigendecomposition and is exposed
/// separately through min_eigenvalue().
class DensityMatrix {
 public:
  static constexpr double herm_tolerance = 1e-12;
  static constexpr double trace_tolerance = 1e-12;
  static constexpr double psd_slack = 1e-10;

  DensityMatrix(int num_qubits, std::vector<cplx> elements);

  int num_qubits() const { return num_qubits_; }
  std::size_t dim() const { return dim_; }
  const std::vector<cplx>& elements() const { return elements_; }
  cplx operator()(std::size_t row, std::size_t col) const {
    return elements_[row * dim_ + col];
  }

  cplx trace() const;
  /// tr(rho^2); 1 for projectors.
  double purity() const;
  /// Smallest eigenvalue, for PSD diagnostics. O(dim^3).
  double min_eigenvalue() const;
  bool is_positive_semidefinite(double slack = psd_slack) const {
    return min_eigenvalue() >= -slack;
  }

 private:
  int num_qubits_;
  std::size_t dim_;
  std::vector<cplx> elements_;
};

/// Two-branch superposition alpha|k⟩ + parity*beta|k̄⟩.
///
/// The constructor normalizes to the canonical representative with
/// label < bitflip(label); (k, k̄) and (k̄, k) describe the same ray, so
/// the swap exchanges alpha and beta (dropping a global phase for odd
/// parity).
struct GhzSpec {
  GhzSpec(int num_qubits, std::uint64_t label, int parity, cplx alpha,
          cplx beta);

  int num_qubits;
  std::uint64_t label;  // canonical: label < bitflip(label)
  int parity;           // +1 or -1
  cplx alpha;
  cplx beta;

  bool operator==(const GhzSpec&) const = default;
};

/// Mixture weights for an incoherent combination of two-branch
/// superpositions sharing the same (alpha, beta). Keys are
/// (label, parity); labels range over the full register, so k and k̄
/// index distinct terms.
struct GhzMixtureSpec {
  GhzMixtureSpec(int num_qubits, cplx alpha, cplx beta,
                 std::map<std::pair<std::uint64_t, int>, double> weights);

  static constexpr double weight_tolerance = 1e-12;

  int num_qubits;
  cplx alpha;
  cplx beta;
  std::map<std::pair<std::uint64_t, int>, double> weights;
};

/// Amplitude alpha at index k, parity*beta at index k̄, zero elsewhere.
PureState make_generalized_ghz(const GhzSpec& spec);

/// rho = sum of weight * projector over the mixture terms.
DensityMatrix make_ghz_diagonal(const GhzMixtureSpec& spec);

/// |psi⟩⟨psi|.
DensityMatrix density_from_pure(const PureState& psi);

}  // namespace ghzdecay
