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

#include "qem/pec.hpp"

#include <cmath>

#include "qem/gates.hpp"

namespace qem {

double pec_cycle_cost(const PauliChannel& ch) {
  double denom = 0.0;
  for (const auto& [p, r] : ch.rates()) denom += p.is_identity() ? r * r : -r * r;
  if (!(denom > 0.0)) {
    throw InfeasiblePlan("noise too strong for cancellation (e_0^2 - sum e_k^2 = " +
                         std::to_string(denom) + ")");
  }
  return 1.0 / denom;
}

PECPlan pec_plan(const Circuit& c, std::span<const PauliChannel> channels, double sigma) {
  require_valid(c);
  if (!(sigma > 0.0 && sigma < 1.0)) throw std::invalid_argument("sigma must lie in (0, 1)");
  if (static_cast<int>(channels.size()) != c.num_hard()) {
    throw std::invalid_argument("need one channel per hard cycle");
  }
  PECPlan plan;
  plan.circuit = c;
  plan.sigma = sigma;
  plan.channels.assign(channels.begin(), channels.end());
  for (const auto& ch : plan.channels) {
    if (ch.num_qubits() != c.n) throw std::invalid_argument("channel width mismatch");
    plan.cycle_cost.push_back(pec_cycle_cost(ch));
    plan.c_tot *= plan.cycle_cost.back();
  }
  const double n = (plan.c_tot / sigma) * (plan.c_tot / sigma);
  plan.N = static_cast<std::uint64_t>(std::ceil(n - 1e-9 * n));
  if (plan.N < 1) plan.N = 1;
  return plan;
}

PECPlan pec_plan(const Circuit& c, const ReportSet& reports, double sigma) {
  require_valid(c);
  std::vector<PauliChannel> channels;
  for (int j = 0; j < c.num_hard(); ++j) {
    auto it = reports.find(c.hard(j).signature());
    if (it == reports.end()) throw InfeasiblePlan("no CER report for cycle " + c.hard(j).signature());
    channels.push_back(sampling_channel(it->second));
  }
  return pec_plan(c, channels, sigma);
}

Circuit pec_circuit(const Circuit& c, std::span<const PauliString> draws) {
  if (static_cast<int>(draws.size()) != c.num_hard()) throw std::invalid_argument("need one draw per hard cycle");
  Circuit out = c;
  for (int j = 0; j < c.num_hard(); ++j) {
    if (draws[j].is_identity()) continue;
    EasyCycle& e = out.easy(j + 1);
    for (int q = 0; q < c.n; ++q) {
      const char l = draws[j].at(q);
      if (l != 'I') e.gates[q] = EasyGate::from_matrix(e.gates[q].matrix * pauli_1q(l));
    }
  }
  return out;
}

std::pair<Circuit, int> pec_sample(const PECPlan& plan, Rng& rng) {
  std::vector<PauliString> draws;
  int sign = 1;
  for (const auto& ch : plan.channels) {
    draws.push_back(ch.sample(rng));
    if (!draws.back().is_identity()) sign = -sign;
  }
  return {pec_circuit(plan.circuit, draws), sign};
}

std::vector<PauliMixture> pec_insertion_maps(const PECPlan& plan) {
  std::vector<PauliMixture> maps;
  for (std::size_t j = 0; j < plan.channels.size(); ++j) {
    PauliMixture m;
    for (const auto& [p, r] : plan.channels[j].rates()) {
      m.emplace_back(p, plan.cycle_cost[j] * (p.is_identity() ? r : -r));
    }
    maps.push_back(std::move(m));
  }
  return maps;
}

Estimate pec_estimate(const PECPlan& plan, const Backend& backend, std::span<const Observable> obs,
                      std::uint64_t seed, int jobs) {
  const auto so = shot_observables(obs, plan.circuit);
  const WeightedSums s = collect(plan.N, seed, jobs, so, [&](Rng& rng) {
    const auto [circ, sign] = pec_sample(plan, rng);
    return std::pair<double, std::uint64_t>{static_cast<double>(sign), backend.sample(circ, rng)};
  });
  Estimate e;
  e.method = "pec";
  e.sigma = plan.sigma;
  e.c_tot = plan.c_tot;
  e.shots_used = plan.N;
  for (std::size_t k = 0; k < so.size(); ++k) {
    e.values[so[k].label()] = {plan.c_tot * s.mean(k), plan.c_tot * s.stderr_of_mean(k)};
  }
  flag_range(e, obs);
  return e;
}

}  // namespace qem
