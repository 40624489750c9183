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

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qem/circuit.hpp"
#include "qem/parallel.hpp"
#include "qem/rng.hpp"
#include "qem/simulator.hpp"

namespace qem {

struct ObservableEstimate {
  double est = 0.0;
  double stderr = 0.0;
};

struct Estimate {
  std::string method = "none";
  double sigma = 0.0;
  std::optional<double> c_tot;
  std::optional<int> alpha;
  std::map<std::string, ObservableEstimate> values;
  std::uint64_t shots_used = 0;
  /// Set when a projector estimate lies outside [0, 1]. Values are not clipped.
  bool out_of_range = false;
};

/// Observable evaluated on a single measured outcome.
class ShotObservable {
 public:
  /// Projectors and Pauli strings made of I and Z on measured qubits only.
  /// Throws std::invalid_argument for anything else.
  ShotObservable(const Observable& o, const Circuit& c);
  double operator()(std::uint64_t outcome) const;
  const std::string& label() const { return label_; }

 private:
  std::string label_;
  bool projector_ = true;
  std::uint64_t value_ = 0;
};

std::vector<ShotObservable> shot_observables(std::span<const Observable> obs, const Circuit& c);

/// Sums of w * r and (w * r)^2 per observable over a shot stream.
struct WeightedSums {
  std::vector<double> sum;
  std::vector<double> sum_sq;
  std::uint64_t shots = 0;

  double mean(std::size_t k) const { return sum[k] / static_cast<double>(shots); }
  /// Standard error of the mean from the sample variance.
  double stderr_of_mean(std::size_t k) const {
    const double n = static_cast<double>(shots);
    if (shots < 2) return 0.0;
    const double var = std::max(0.0, (sum_sq[k] - sum[k] * sum[k] / n) / (n - 1));
    return std::sqrt(var / n);
  }
};

/// Draws `shots` (weight, outcome) pairs from shot(rng) under the batch
/// seeding rule and accumulates the weighted observable values. Batch partial
/// sums are merged pairwise in batch order.
template <typename ShotFn>
WeightedSums collect(std::uint64_t shots, std::uint64_t seed, int jobs,
                     const std::vector<ShotObservable>& obs, ShotFn shot) {
  const std::size_t k = obs.size();
  auto parts = run_batches(shots, jobs, [&](std::uint64_t b, std::uint64_t count) {
    Rng rng(derive_seed(seed, b));
    WeightedSums s{std::vector<double>(k, 0.0), std::vector<double>(k, 0.0), count};
    for (std::uint64_t i = 0; i < count; ++i) {
      const auto [w, outcome] = shot(rng);
      for (std::size_t o = 0; o < k; ++o) {
        const double v = w * obs[o](outcome);
        s.sum[o] += v;
        s.sum_sq[o] += v * v;
      }
    }
    return s;
  });
  WeightedSums total{std::vector<double>(k, 0.0), std::vector<double>(k, 0.0), shots};
  for (std::size_t o = 0; o < k; ++o) {
    total.sum[o] = pairwise_sum(parts, 0, parts.size(), [o](const WeightedSums& s) { return s.sum[o]; });
    total.sum_sq[o] =
        pairwise_sum(parts, 0, parts.size(), [o](const WeightedSums& s) { return s.sum_sq[o]; });
  }
  return total;
}

/// Plain frequencies of the circuit on the backend, with 1/sigma^2 shots
/// (rounded up) unless `shots` is given.
Estimate direct_estimate(const Circuit& c, const Backend& backend, std::span<const Observable> obs,
                         double sigma, std::uint64_t seed, int jobs = 1,
                         std::optional<std::uint64_t> shots = std::nullopt);

/// Shots needed for plain estimation at target standard deviation sigma.
std::uint64_t direct_shots(double sigma);

/// Flags projector values outside [0, 1] on the estimate.
void flag_range(Estimate& e, std::span<const Observable> obs);

}  // namespace qem
