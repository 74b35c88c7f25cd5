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
#include <cstddef>
#include <vector>

namespace ghzdecay::internal {

/// Ascending eigenvalues of a dim x dim Hermitian matrix in row-major
/// storage. Throws numeric_error on non-convergence, never returns a
/// partial spectrum.
std::vector<double> hermitian_eigenvalues(const std::complex<double>* data,
                                          std::size_t dim);

}  // namespace ghzdecay::internal
