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
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "qem/circuit.hpp"
#include "qem/noise.hpp"
#include "qem/pauli.hpp"

namespace qem {

class FitFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct DecayCurve {
  PauliString pauli;
  std::vector<int> depths;
  /// Mean of the frame-corrected Pauli measurement at each depth.
  std::vector<double> fidelity_estimates;
  double fitted = 1.0;
  double fit_stderr = 0.0;
};

struct RateEstimate {
  double est = 0.0;
  double stderr = 0.0;
};

struct CERReport {
  HardCycle cycle;
  int K = 0;
  /// Every Pauli of weight <= K, identity included.
  std::map<PauliString, RateEstimate> rates;
  double residual_mass = 0.0;
  double beta = 0.0;
};

struct BenchmarkOptions {
  std::vector<int> depths{2, 4, 8, 16};
  std::uint64_t shots_per_point = 2000;
  std::uint64_t seed = 0;
  /// Weight cap on tracked Paulis; negative tracks all 4^n.
  int max_weight = -1;
  int jobs = 1;
};

/// Rates with est below this are left out of beta.
inline constexpr double kBetaFloor = 1e-3;

/// Cycle-benchmarking decays for each tracked Pauli b: prepare a +1
/// eigenstate of b, apply depth-many (uniform Pauli twirl, cycle, noise)
/// steps while tracking the twirl frame, and measure the propagated Pauli.
///
/// A cZ or cX cycle maps b to H(b), so a run of depth d decays as
/// A f_{H(b)}^{ceil(d/2)} f_b^{floor(d/2)}. Each even depth d in the grid is
/// paired with depth d-1, and the members of each {b, H(b)} orbit are fit
/// jointly by weighted least squares on log E, one intercept per prepared
/// Pauli. Throws FitFailure when every estimate of an orbit is non-positive.
std::vector<DecayCurve> benchmark_cycle(const HardCycle& cycle, const NoiseModel& noise,
                                        const BenchmarkOptions& opts);

/// Curves with exact fidelities f_b = sum_a (-1)^{<a,b>} e_a and zero stderr.
std::vector<DecayCurve> analytic_curves(const PauliChannel& ch, int max_weight = -1);

/// Rates of weight <= K from fitted fidelities. With all 4^n fidelities the
/// inverse transform e_a = 4^{-n} sum_b (-1)^{<a,b>} f_b is used; otherwise
/// the curves must cover every Pauli of weight <= K and the fidelity relation
/// restricted to those Paulis is solved. The identity fidelity is 1 when not
/// supplied. Throws std::invalid_argument for insufficient curves.
CERReport reconstruct_rates(const std::vector<DecayCurve>& curves, int K, int n);

/// Clips negative estimates to zero; the identity takes 1 - sum(others).
PauliChannel sampling_channel(const CERReport& report);

/// All Paulis on n qubits with weight <= K, in index order.
std::vector<PauliString> paulis_up_to_weight(int n, int K);

}  // namespace qem
