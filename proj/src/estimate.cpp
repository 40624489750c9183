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

#include "qem/estimate.hpp"

#include <stdexcept>

namespace qem {

ShotObservable::ShotObservable(const Observable& o, const Circuit& c) : label_(o.label) {
  const int k = static_cast<int>(c.measured.size());
  if (o.kind == Observable::Kind::projector) {
    if (static_cast<int>(o.label.size()) != k) {
      throw std::invalid_argument("projector '" + o.label + "' does not match the measured register");
    }
    value_ = parse_bitstring(o.label);
    return;
  }
  projector_ = false;
  const PauliString p = PauliString::parse(o.label);
  if (p.num_qubits() != c.n) throw std::invalid_argument("Pauli observable width mismatch");
  if (p.x_bits() != 0) {
    throw std::invalid_argument("shot estimation supports Z-type Pauli observables only: " + o.label);
  }
  for (int q = 0; q < c.n; ++q) {
    if (!((p.z_bits() >> q) & 1)) continue;
    bool found = false;
    for (int i = 0; i < k; ++i) {
      if (c.measured[i] == q) {
        value_ |= std::uint64_t{1} << i;
        found = true;
      }
    }
    if (!found) throw std::invalid_argument("Pauli observable acts on an unmeasured qubit: " + o.label);
  }
}

double ShotObservable::operator()(std::uint64_t outcome) const {
  if (projector_) return outcome == value_ ? 1.0 : 0.0;
  return (std::popcount(outcome & value_) & 1) ? -1.0 : 1.0;
}

std::vector<ShotObservable> shot_observables(std::span<const Observable> obs, const Circuit& c) {
  std::vector<ShotObservable> out;
  for (const auto& o : obs) out.emplace_back(o, c);
  return out;
}

std::uint64_t direct_shots(double sigma) {
  if (!(sigma > 0.0 && sigma < 1.0)) throw std::invalid_argument("sigma must lie in (0, 1)");
  return static_cast<std::uint64_t>(std::ceil(1.0 / (sigma * sigma) - 1e-9));
}

void flag_range(Estimate& e, std::span<const Observable> obs) {
  for (const auto& o : obs) {
    if (o.kind != Observable::Kind::projector) continue;
    const double v = e.values.at(o.label).est;
    if (v < 0.0 || v > 1.0) e.out_of_range = true;
  }
}

Estimate direct_estimate(const Circuit& c, const Backend& backend, std::span<const Observable> obs,
                         double sigma, std::uint64_t seed, int jobs, std::optional<std::uint64_t> shots) {
  require_valid(c);
  const std::uint64_t n = shots ? *shots : direct_shots(sigma);
  if (n == 0) throw std::invalid_argument("shot count must be positive");
  const auto so = shot_observables(obs, c);
  const WeightedSums s = collect(n, seed, jobs, so, [&](Rng& rng) {
    return std::pair<double, std::uint64_t>{1.0, backend.sample(c, rng)};
  });
  Estimate e;
  e.method = "none";
  e.sigma = sigma;
  e.shots_used = n;
  for (std::size_t k = 0; k < so.size(); ++k) e.values[so[k].label()] = {s.mean(k), s.stderr_of_mean(k)};
  return e;
}

}  // namespace qem
