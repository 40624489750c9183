// Copyright 2026 The QEM Authors
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

#include "qem/circuit.hpp"

namespace qem {

/// Prepares the n-qubit W state on a line, 2 <= n <= 6. Each of the n-1
/// steps is a controlled R_Y followed by a cX, compiled into three cZ cycles.
Circuit build_w_state_circuit(int n);

/// Phase estimation of U = diag(1, e^{2 pi i kappa}) with t in {1, 2, 3}
/// ancillae and the target prepared in |1>. All gates are routed on a line
/// with nearest-neighbour cZ. Every qubit is measured: the first t characters
/// of an outcome are the ancilla bits, most significant first, and the last
/// character is the target.
Circuit build_qpe_circuit(int t, double kappa);

/// Brickwork of cZ cycles between Haar-random single-qubit layers. Cycle j
/// (0-based) acts on pairs (1,2),(3,4),... for even j and (0,1),(2,3),... for
/// odd j; a layer with no pair falls back to (0,1).
Circuit build_random_circuit(int n, int m, std::uint64_t seed);

}  // namespace qem
