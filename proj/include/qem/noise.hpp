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

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "qem/circuit.hpp"
#include "qem/pauli.hpp"
#include "qem/rng.hpp"

namespace qem {

/// Rates below this are dropped and returned to the identity.
inline constexpr double kRateFloor = 1e-15;

/// Probability distribution over Pauli errors, D(rho) = sum_k e_k P_k rho P_k.
/// Rates are kept sorted by Pauli so iteration and sampling are reproducible.
class PauliChannel {
 public:
  PauliChannel() = default;
  /// Noiseless channel on n qubits.
  explicit PauliChannel(int n);

  /// Builds a channel from error rates. When the identity is missing its rate
  /// is 1 - sum(others). Throws std::invalid_argument for rates outside [0, 1]
  /// or a total that differs from 1 by more than 1e-12.
  static PauliChannel from_rates(int n, const std::map<PauliString, double>& rates);

  int num_qubits() const { return n_; }
  double rate(const PauliString& p) const;
  double identity_rate() const { return rate(PauliString(n_)); }
  /// All stored (Pauli, rate) pairs including the identity.
  const std::vector<std::pair<PauliString, double>>& rates() const { return rates_; }
  bool is_noiseless() const { return identity_rate() >= 1.0 - kRateFloor; }

  /// P_k with probability e_k.
  PauliString sample(Rng& rng) const;

  bool operator==(const PauliChannel&) const = default;

 private:
  void rebuild_cdf();

  int n_ = 0;
  std::vector<std::pair<PauliString, double>> rates_;
  std::vector<double> cdf_;
};

/// Free-function form of PauliChannel::sample.
inline PauliString sample_error(const PauliChannel& ch, Rng& rng) { return ch.sample(rng); }

/// Distribution of the phase-free product of independent draws from a then b.
PauliChannel convolve(const PauliChannel& a, const PauliChannel& b);

/// D^alpha as an alpha-fold convolution. Throws for alpha < 1.
PauliChannel channel_power(const PauliChannel& ch, int alpha);

/// Pauli fidelity f_b = sum_a (-1)^{<a,b>} e_a.
double pauli_fidelity(const PauliChannel& ch, const PauliString& b);

/// Unitary error applied after the ideal cycle on the listed qubits.
struct CoherentNoise {
  std::vector<int> qubits;
  Eigen::MatrixXcd unitary;
};

using NoiseEntry = std::variant<PauliChannel, CoherentNoise>;

/// Independent per-qubit bit flips on the measured outcome.
struct ReadoutError {
  std::vector<double> p10;  ///< P(read 1 | prepared 0) per qubit
  std::vector<double> p01;  ///< P(read 0 | prepared 1) per qubit
};

class UncoveredCycle : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Noise of each distinct hard cycle, keyed by HardCycle::signature(). Easy
/// cycles are noiseless.
class NoiseModel {
 public:
  struct Entry {
    HardCycle cycle;
    NoiseEntry noise;
  };

  NoiseModel() = default;
  explicit NoiseModel(int n) : n_(n) {}

  int num_qubits() const { return n_; }
  void set(const HardCycle& cycle, NoiseEntry noise);
  const NoiseEntry* find(const HardCycle& cycle) const;
  /// Throws UncoveredCycle when no entry exists.
  const NoiseEntry& at(const HardCycle& cycle) const;
  const std::map<std::string, Entry>& entries() const { return entries_; }

  std::optional<ReadoutError> readout;

  /// Every hard cycle of `c` mapped to the identity channel.
  static NoiseModel noiseless_for(const Circuit& c);

 private:
  int n_ = 0;
  std::map<std::string, Entry> entries_;
};

/// The distinct hard cycles of a circuit, in order of first appearance.
std::vector<HardCycle> distinct_hard_cycles(const Circuit& c);

/// Demo channel for one cZ cycle with 1 - e_0 = total_error. Most of the
/// error is Z on idle qubits; the rest is Z and X/Y on the active qubits and
/// ZZ across each gate pair.
PauliChannel synthetic_cycle_channel(const HardCycle& cycle, double total_error);

/// synthetic_cycle_channel for every distinct hard cycle of `c`.
NoiseModel synthetic_noise(const Circuit& c, double total_error);

}  // namespace qem
