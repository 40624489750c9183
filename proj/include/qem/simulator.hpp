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
#include <string>
#include <vector>

#include "qem/circuit.hpp"
#include "qem/noise.hpp"
#include "qem/rng.hpp"

namespace qem {

struct ShotRecord {
  std::map<std::string, std::uint64_t> counts;
  std::uint64_t total_shots = 0;
  std::uint64_t seed = 0;

  bool operator==(const ShotRecord&) const = default;
};

/// Pools the counts of two records; the merged seed is that of `a`.
ShotRecord merge(const ShotRecord& a, const ShotRecord& b);

/// Empirical distribution over outcome indices of a k-bit register.
std::vector<double> frequencies(const ShotRecord& r, int k);

struct ExactResult {
  /// Outcome probabilities of the measured register (bit i = measured[i]).
  std::vector<double> distribution;
  /// Expectation per observable label.
  std::map<std::string, double> expectations;
  int num_measured = 0;

  std::map<std::string, double> distribution_map() const;
};

/// One shot of a circuit on some device model. Implementations must be
/// thread-safe for concurrent calls with distinct streams.
class Backend {
 public:
  virtual ~Backend() = default;
  /// Measured outcome, bit i = value read on c.measured[i].
  virtual std::uint64_t sample(const Circuit& c, Rng& rng) const = 0;
};

/// Statevector trajectories: Pauli noise is a freshly drawn Pauli after each
/// hard cycle, coherent noise its unitary. With rc on, every shot draws its
/// own twirl for each hard cycle. Readout flips from the model are applied
/// to the sampled bits.
class TrajectoryBackend : public Backend {
 public:
  TrajectoryBackend(NoiseModel noise, bool rc = true) : noise_(std::move(noise)), rc_(rc) {}
  std::uint64_t sample(const Circuit& c, Rng& rng) const override;
  const NoiseModel& noise() const { return noise_; }

 private:
  NoiseModel noise_;
  bool rc_;
};

inline constexpr int kMaxShotQubits = 6;
inline constexpr int kMaxExactNoisyQubits = 4;

/// Shot record from `shots` independent trajectories. Deterministic in seed,
/// independent of `jobs`.
ShotRecord run_shots(const Circuit& c, const NoiseModel& noise, std::uint64_t shots,
                     std::uint64_t seed, bool rc, int jobs = 1);

/// Same, on any backend.
ShotRecord run_shots(const Circuit& c, const Backend& backend, std::uint64_t shots,
                     std::uint64_t seed, int jobs = 1);

struct ExactOptions {
  /// Coherent noise is only defined here as an average over explicit twirls.
  bool rc_average = false;
  int twirl_draws = 2000;
  std::uint64_t seed = 0;
};

/// Exact expectations and distribution. A null noise model runs the ideal
/// statevector (n <= 6); otherwise the density matrix is propagated (n <= 4).
ExactResult exact_run(const Circuit& c, const NoiseModel* noise,
                      std::span<const Observable> observables, const ExactOptions& opts = {});

/// Exact run with an explicit Pauli channel for each hard cycle position.
ExactResult exact_run_per_cycle(const Circuit& c, std::span<const PauliChannel> channels,
                                std::span<const Observable> observables,
                                const std::optional<ReadoutError>& readout = std::nullopt);

/// Signed combination sum_l coeff_l P_l rho P_l.
using PauliMixture = std::vector<std::pair<PauliString, double>>;

/// Propagates the density matrix through M_j D_j H_j E_j for every hard
/// cycle, where M_j is insertion_maps[j]. The maps need not be trace
/// preserving; any overall scale is carried by their coefficients.
ExactResult exact_quasiprob_run(const Circuit& c, const NoiseModel& noise,
                                std::span<const PauliMixture> insertion_maps,
                                std::span<const Observable> observables);

/// Ideal output distribution over the measured register.
std::vector<double> ideal_distribution(const Circuit& c);

}  // namespace qem
