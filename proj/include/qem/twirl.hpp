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

#include <span>

#include "qem/circuit.hpp"
#include "qem/noise.hpp"
#include "qem/pauli.hpp"
#include "qem/rng.hpp"

namespace qem {

/// Dresses every hard cycle H_j with a uniformly random Pauli T_j: T_j is
/// merged into E_j and the phase-free correction H_j T_j H_j^dag into
/// E_{j+1}. The logical unitary is unchanged up to global phase.
Circuit randomized_compile(const Circuit& c, Rng& rng);

/// Same construction with caller-chosen twirls, one per hard cycle.
Circuit randomized_compile(const Circuit& c, std::span<const PauliString> twirls);

/// Pauli-twirled form of a cycle's noise. Coherent noise V maps to rates
/// |Tr(P_a V)|^2 / 4^n; Pauli channels are returned unchanged. Throws
/// std::invalid_argument when n > 4.
PauliChannel effective_pauli_channel(const HardCycle& cycle, const NoiseEntry& noise);

/// Coherent noise embedded as a dense unitary on all n qubits.
Eigen::MatrixXcd embed_unitary(int n, const CoherentNoise& noise);

}  // namespace qem
