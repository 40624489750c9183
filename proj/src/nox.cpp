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

#include "qem/nox.hpp"

#include <cmath>

#include "qem/clifford.hpp"

namespace qem {

std::string to_string(Amplification a) {
  return a == Amplification::identity_insertion ? "identity_insertion" : "append_errors";
}

bool is_self_inverse(const HardCycle& h) {
  for (int q = 0; q < h.n; ++q) {
    for (char l : {'X', 'Z'}) {
      const PauliString p = PauliString::single(h.n, q, l);
      const auto [ph1, once] = conjugate_by_cycle(h, p);
      const auto [ph2, twice] = conjugate_by_cycle(h, once);
      if (twice != p || ph1 * ph2 != Phase::one()) return false;
    }
  }
  return true;
}

NOXPlan nox_plan(const Circuit& c, int alpha, Amplification method, std::span<const PauliChannel> channels,
                 double sigma) {
  require_valid(c);
  if (alpha < 2) throw InfeasiblePlan("NOX needs alpha >= 2");
  if (!(sigma > 0.0 && sigma < 1.0)) throw std::invalid_argument("sigma must lie in (0, 1)");
  const int m = c.num_hard();
  NOXPlan plan;
  plan.circuit = c;
  plan.alpha = alpha;
  plan.method = method;
  plan.sigma = sigma;
  if (method == Amplification::identity_insertion) {
    if (alpha % 2 == 0) throw InfeasiblePlan("identity insertion needs odd alpha");
    for (int j = 0; j < m; ++j) {
      if (!is_self_inverse(c.hard(j))) throw InfeasiblePlan("identity insertion needs self-inverse cycles");
    }
  } else {
    if (static_cast<int>(channels.size()) != m) throw InfeasiblePlan("append_errors needs one channel per hard cycle");
    plan.channels.assign(channels.begin(), channels.end());
  }
  const double n = m == 0 ? 1.0 / (sigma * sigma)
                          : double(m) * m / ((alpha - 1.0) * (alpha - 1.0) * sigma * sigma);
  plan.shots_per_circuit = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(n - 1e-9 * n)));
  return plan;
}

NOXPlan nox_plan(const Circuit& c, int alpha, Amplification method, const ReportSet& reports, double sigma) {
  std::vector<PauliChannel> channels;
  if (method == Amplification::append_errors) {
    for (int j = 0; j < c.num_hard(); ++j) {
      auto it = reports.find(c.hard(j).signature());
      if (it == reports.end()) throw InfeasiblePlan("no CER report for cycle " + c.hard(j).signature());
      channels.push_back(sampling_channel(it->second));
    }
  }
  return nox_plan(c, alpha, method, channels, sigma);
}

Circuit identity_insertion_circuit(const Circuit& c, int j, int alpha) {
  if (j < 0 || j >= c.num_hard()) throw std::out_of_range("hard cycle index out of range");
  Circuit out;
  out.n = c.n;
  out.measured = c.measured;
  for (int i = 0; i < static_cast<int>(c.cycles.size()); ++i) {
    out.cycles.push_back(c.cycles[i]);
    if (i == 2 * j + 1) {
      for (int r = 1; r < alpha; ++r) {
        out.cycles.emplace_back(EasyCycle::identity(c.n));
        out.cycles.push_back(c.cycles[i]);
      }
    }
  }
  return out;
}

Circuit append_errors_circuit(const Circuit& c, int j, std::span<const PauliString> qs) {
  if (j < 0 || j >= c.num_hard()) throw std::out_of_range("hard cycle index out of range");
  PauliString total(c.n);
  for (const auto& q : qs) total = pauli_mul_unsigned(total, q);
  std::vector<PauliString> draws(static_cast<std::size_t>(c.num_hard()), PauliString(c.n));
  draws[j] = total;
  return pec_circuit(c, draws);
}

Circuit nox_amplified_circuit(const Circuit& c, int j, const NOXPlan& plan, Rng& rng) {
  if (plan.method == Amplification::identity_insertion) {
    if (plan.alpha % 2 == 0 || !is_self_inverse(c.hard(j))) {
      throw InfeasiblePlan("identity insertion needs odd alpha and a self-inverse cycle");
    }
    return identity_insertion_circuit(c, j, plan.alpha);
  }
  if (j >= static_cast<int>(plan.channels.size())) throw InfeasiblePlan("no channel for cycle " + std::to_string(j));
  std::vector<PauliString> qs;
  for (int k = 1; k < plan.alpha; ++k) qs.push_back(plan.channels[j].sample(rng));
  return append_errors_circuit(c, j, qs);
}

double nox_combine(double e_in, std::span<const double> e_amplified, int alpha) {
  const double a1 = alpha - 1.0;
  const double m = static_cast<double>(e_amplified.size());
  double sum = 0.0;
  for (double e : e_amplified) sum += e;
  return e_in * (a1 + m) / a1 - sum / a1;
}

Estimate nox_estimate(const NOXPlan& plan, const Backend& backend, std::span<const Observable> obs,
                      std::uint64_t seed, int jobs) {
  const Circuit& c = plan.circuit;
  const int m = c.num_hard();
  const auto so = shot_observables(obs, c);
  const std::uint64_t n = plan.shots_per_circuit;
  std::vector<WeightedSums> runs;
  runs.push_back(collect(n, derive_seed(seed, std::uint64_t{0}), jobs, so, [&](Rng& rng) {
    return std::pair<double, std::uint64_t>{1.0, backend.sample(c, rng)};
  }));
  for (int j = 0; j < m; ++j) {
    const std::uint64_t sub = derive_seed(seed, static_cast<std::uint64_t>(j + 1));
    if (plan.method == Amplification::identity_insertion) {
      const Circuit amp = identity_insertion_circuit(c, j, plan.alpha);
      runs.push_back(collect(n, sub, jobs, so, [&](Rng& rng) {
        return std::pair<double, std::uint64_t>{1.0, backend.sample(amp, rng)};
      }));
    } else {
      runs.push_back(collect(n, sub, jobs, so, [&](Rng& rng) {
        const Circuit amp = nox_amplified_circuit(c, j, plan, rng);
        return std::pair<double, std::uint64_t>{1.0, backend.sample(amp, rng)};
      }));
    }
  }
  Estimate e;
  e.method = "nox";
  e.sigma = plan.sigma;
  e.alpha = plan.alpha;
  e.shots_used = n * static_cast<std::uint64_t>(m + 1);
  const double a1 = plan.alpha - 1.0;
  const double c_in = (a1 + m) / a1;
  for (std::size_t k = 0; k < so.size(); ++k) {
    std::vector<double> amp;
    double var = c_in * c_in * std::pow(runs[0].stderr_of_mean(k), 2);
    for (int j = 1; j <= m; ++j) {
      amp.push_back(runs[j].mean(k));
      var += std::pow(runs[j].stderr_of_mean(k) / a1, 2);
    }
    e.values[so[k].label()] = {nox_combine(runs[0].mean(k), amp, plan.alpha), std::sqrt(var)};
  }
  flag_range(e, obs);
  return e;
}

}  // namespace qem
