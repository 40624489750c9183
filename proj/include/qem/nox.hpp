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
#include <span>
#include <string>
#include <vector>

#include "qem/circuit.hpp"
#include "qem/estimate.hpp"
#include "qem/noise.hpp"
#include "qem/pec.hpp"
#include "qem/simulator.hpp"

namespace qem {

enum class Amplification { identity_insertion, append_errors };

std::string to_string(Amplification a);

struct NOXPlan {
  Circuit circuit;
  int alpha = 3;
  Amplification method = Amplification::identity_insertion;
  /// Channel per hard-cycle position (append_errors only).
  std::vector<PauliChannel> channels;
  double sigma = 0.0;
  /// ceil(m^2 / ((alpha - 1)^2 sigma^2)); ceil(1/sigma^2) when m = 0.
  std::uint64_t shots_per_circuit = 0;
};

/// True when applying the cycle twice is the identity.
bool is_self_inverse(const HardCycle& h);

/// Identity insertion needs odd alpha and self-inverse cycles; append_errors
/// needs one channel per hard cycle. Violations throw InfeasiblePlan.
NOXPlan nox_plan(const Circuit& c, int alpha, Amplification method, std::span<const PauliChannel> channels,
                 double sigma);

NOXPlan nox_plan(const Circuit& c, int alpha, Amplification method, const ReportSet& reports, double sigma);

/// H_j replaced by alpha back-to-back copies separated by identity easy cycles.
Circuit identity_insertion_circuit(const Circuit& c, int j, int alpha);

/// The Paulis qs (alpha - 1 of them) applied right after H_j, merged into E_{j+1}.
Circuit append_errors_circuit(const Circuit& c, int j, std::span<const PauliString> qs);

/// Circuit with the noise of cycle j amplified by plan.alpha. For
/// append_errors the Paulis are drawn from rng, so call once per shot.
Circuit nox_amplified_circuit(const Circuit& c, int j, const NOXPlan& plan, Rng& rng);

/// E_in (alpha - 1 + m)/(alpha - 1) - sum_j E_j / (alpha - 1).
double nox_combine(double e_in, std::span<const double> e_amplified, int alpha);

/// Runs the base circuit and the m amplified variants with
/// plan.shots_per_circuit shots each and extrapolates.
Estimate nox_estimate(const NOXPlan& plan, const Backend& backend, std::span<const Observable> obs,
                      std::uint64_t seed, int jobs = 1);

}  // namespace qem
