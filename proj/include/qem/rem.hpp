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
#include <vector>

#include <Eigen/Dense>

#include "qem/simulator.hpp"

namespace qem {

/// Per-qubit column-stochastic matrices [[P(0|0), P(0|1)], [P(1|0), P(1|1)]].
struct ConfusionMatrix {
  std::vector<Eigen::Matrix2d> per_qubit;

  static ConfusionMatrix identity(int n);
  static ConfusionMatrix from_flips(const std::vector<double>& p10, const std::vector<double>& p01);
  /// Matrices in the order of a measured register.
  ConfusionMatrix restrict_to(const std::vector<int>& measured) const;
};

/// P(0|0) from an all-identity circuit and P(1|1) from an all-X circuit on
/// n qubits, by marginal frequency. Throws for zero shots.
ConfusionMatrix rcal_measure(const Backend& backend, int n, std::uint64_t shots, std::uint64_t seed,
                             int jobs = 1);

/// Applies the tensor-product inverse to a vector over 2^k outcomes without
/// clipping. Throws std::invalid_argument when some P(i|i) <= 0.5.
std::vector<double> rem_invert(std::vector<double> v, const ConfusionMatrix& cm);

/// Standard errors after rem_invert, propagated linearly in quadrature.
std::vector<double> rem_invert_stderr(const std::vector<double>& se, const ConfusionMatrix& cm);

/// Empirical distribution of the record corrected by rem_invert, then
/// clipped at zero and renormalized. Matrices follow bitstring positions.
std::vector<double> rem_apply(const ShotRecord& counts, const ConfusionMatrix& cm);

/// Pushes a distribution through the confusion matrices.
std::vector<double> apply_confusion(std::vector<double> v, const ConfusionMatrix& cm);

}  // namespace qem
