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

#include "ghzdecay/entanglement.hpp"

#include <Eigen/Dense>
#include <bit>
#include <stdexcept>
#include <string>

#include "eig_internal.hpp"
#include "ghzdecay/errors.hpp"

namespace ghzdecay {

namespace internal {

std::vector<double> hermitian_eigenvalues(const std::complex<double>* data,
                                          std::size_t dim) {
  using RowMat = Eigen::Matrix<std::complex<double>, Eigen::Dynamic,
                               Eigen::Dynamic, Eigen::RowMajor>;
  Eigen::MatrixXcd m = Eigen::Map<const RowMat>(data, dim, dim);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver;
  solver.compute(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw numeric_error("Hermitian eigensolver failed to converge on a " +
                        std::to_string(dim) + "-dimensional matrix");
  }
  const auto& evs = solver.eigenvalues();
  return std::vector<double>(evs.data(), evs.data() + evs.size());
}

}  // namespace internal

Bipartition::Bipartition(int num_qubits, std::uint64_t side_a_mask)
    : num_qubits_(num_qubits), side_a_(side_a_mask) {
  if (num_qubits < 2 || num_qubits > 62) {
    throw std::invalid_argument("bipartitions need at least 2 qubits");
  }
  const std::uint64_t full = (std::uint64_t{1} << num_qubits) - 1;
  if (side_a_ == 0 || side_a_ > full || side_a_ == full) {
    throw std::invalid_argument(
        "side-A mask must select a proper nonempty qubit subset");
  }
  const int a = std::popcount(side_a_);
  const int b = num_qubits_ - a;
  // Canonicalize: smaller side is A; ties keep qubit 0 in A.
  if (a > b || (a == b && (side_a_ & 1) == 0)) {
    side_a_ = full ^ side_a_;
  }
}

int Bipartition::side_a_size() const { return std::popcount(side_a_); }

std::uint64_t Bipartition::label_mask_a() const {
  std::uint64_t mask = 0;
  for (int q = 0; q < num_qubits_; ++q) {
    if (side_a_ & (std::uint64_t{1} << q)) {
      mask |= qubit_bit(num_qubits_, q);
    }
  }
  return mask;
}

HermitianMatrix partial_transpose(const DensityMatrix& rho,
                                  const Bipartition& cut) {
  if (cut.num_qubits() != rho.num_qubits()) {
    throw std::invalid_argument("bipartition does not match state size");
  }
  const std::size_t dim = rho.dim();
  const std::uint64_t ma = cut.label_mask_a();
  const std::uint64_t mb = ~ma;
  HermitianMatrix out;
  out.num_qubits = rho.num_qubits();
  out.elements.resize(dim * dim);
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) {
      const std::size_t pr = (c & ma) | (r & mb);
      const std::size_t pc = (r & ma) | (c & mb);
      out.elements[pr * dim + pc] = rho(r, c);
    }
  }
  return out;
}

NegativityResult negativity(const DensityMatrix& rho, const Bipartition& cut) {
  const HermitianMatrix pt = partial_transpose(rho, cut);
  const std::vector<double> evs =
      internal::hermitian_eigenvalues(pt.elements.data(), pt.dim());
  double negative_sum = 0.0;
  for (double ev : evs) {
    if (ev < 0.0) {
      negative_sum += -ev;
    } else {
      break;  // ascending order
    }
  }
  NegativityResult result;
  result.value = std::max(0.0, negative_sum);
  result.eigenvalue_floor = evs.front();
  return result;
}

std::optional<double> normalized_negativity(const DensityMatrix& evolved,
                                            const DensityMatrix& initial,
                                            const Bipartition& cut,
                                            double floor) {
  const double initial_value = negativity(initial, cut).value;
  if (initial_value <= floor) {
    return std::nullopt;
  }
  return negativity(evolved, cut).value / initial_value;
}

double max_negativity(const Bipartition& cut) {
  return (static_cast<double>(cut.dim_a()) - 1.0) / 2.0;
}

std::vector<Bipartition> enumerate_cuts(int num_qubits, CutPolicy policy) {
  if (num_qubits < 2) {
    throw std::invalid_argument("cut enumeration needs at least 2 qubits");
  }
  std::vector<Bipartition> cuts;
  switch (policy) {
    case CutPolicy::MostBalanced: {
      const int half = (num_qubits + 1) / 2;
      const std::uint64_t mask = (std::uint64_t{1} << half) - 1;
      cuts.emplace_back(num_qubits, mask);
      break;
    }
    case CutPolicy::LeastBalanced:
      cuts.emplace_back(num_qubits, std::uint64_t{1});
      break;
    case CutPolicy::All: {
      const std::uint64_t full = (std::uint64_t{1} << num_qubits) - 1;
      for (std::uint64_t m = 1; m < full; ++m) {
        const int a = std::popcount(m);
        const int b = num_qubits - a;
        const bool canonical = a < b || (a == b && (m & 1));
        if (canonical) {
          cuts.emplace_back(num_qubits, m);
        }
      }
      break;
    }
  }
  return cuts;
}

}  // namespace ghzdecay
