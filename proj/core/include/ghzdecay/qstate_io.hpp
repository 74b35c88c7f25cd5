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

#include <string>
#include <variant>

#include "ghzdecay/qstate.hpp"

namespace ghzdecay {

/// Reproducibility snapshots for states.
///
/// Binary layout (little endian): magic "QSNP", u8 type tag (1 = pure
/// state, 2 = density matrix), u8 format version (1), u16 zero pad,
/// u32 qubit count, then the row-major complex entries as IEEE-754
/// double (re, im) pairs.
///
/// The JSON form mirrors the same fields: {"type": "pure_state" |
/// "density_matrix", "num_qubits": N, "data": [[re, im], ...]}.
/// Files ending in ".json" are read and written as JSON, anything else
/// as binary.

using StateSnapshot = std::variant<PureState, DensityMatrix>;

void save_state(const PureState& psi, const std::string& path);
void save_state(const DensityMatrix& rho, const std::string& path);

/// Loads either snapshot type; contents are re-validated on load.
StateSnapshot load_state(const std::string& path);

}  // namespace ghzdecay
