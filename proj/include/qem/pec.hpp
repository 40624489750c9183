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
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qem/cer.hpp"
#include "qem/circuit.hpp"
#include "qem/estimate.hpp"
#include "qem/noise.hpp"
#include "qem/simulator.hpp"

namespace qem {

/// Noise too strong to be cancelled, or otherwise unplannable input.
class InfeasiblePlan : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// CER reports keyed by hard-cycle signature.
using ReportSet = std::map<std::string, CERReport>;

struct PECPlan {
  Circuit circuit;
  /// Insertion channel for each hard-cycle position.
  std::vector<PauliChannel> channels;
  /// 1 / (e_0^2 - sum_{k != 0} e_k^2) per position.
  std::vector<double> cycle_cost;
  double c_tot = 1.0;
  double sigma = 0.0;
  std::uint64_t N = 0;
};

/// Per-cycle cancellation cost. Throws InfeasiblePlan when the denominator
/// is not positive.
double pec_cycle_cost(const PauliChannel& ch);

PECPlan pec_plan(const Circuit& c, std::span<const PauliChannel> channels, double sigma);

/// Plan from reconstructed rates; each report is clipped and renormalized.
PECPlan pec_plan(const Circuit& c, const ReportSet& reports, double sigma);

/// One PEC circuit: P_j drawn from the insertion channel of cycle j is merged
/// into the front of E_{j+1}. The sign is -1 to the number of non-identity draws.
std::pair<Circuit, int> pec_sample(const PECPlan& plan, Rng& rng);

/// The same circuit for explicit draws, one per hard cycle.
Circuit pec_circuit(const Circuit& c, std::span<const PauliString> draws);

/// Signed insertion maps c_j (e_0 P_0 - sum_{k != 0} e_k P_k) whose product
/// over cycles reproduces the average PEC map, for exact_quasiprob_run.
std::vector<PauliMixture> pec_insertion_maps(const PECPlan& plan);

/// C_tot sum_k s_k r_k / N over plan.N sampled circuits, one shot each.
Estimate pec_estimate(const PECPlan& plan, const Backend& backend, std::span<const Observable> obs,
                      std::uint64_t seed, int jobs = 1);

}  // namespace qem
