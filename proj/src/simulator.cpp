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

#include "qem/simulator.hpp"

#include <cmath>
#include <stdexcept>

#include "qem/clifford.hpp"
#include "qem/parallel.hpp"
#include "qem/statevector.hpp"
#include "qem/twirl.hpp"

namespace qem {

namespace {

using Density = Eigen::MatrixXcd;

template <typename F>
void conjugate_dm(Density& rho, F&& left_apply) {
  left_apply(rho);
  rho = rho.adjoint().eval();
  left_apply(rho);
  rho.adjointInPlace();
}

// sum_l c_l P_l rho P_l, using (P rho P)[i^x, j^x] = (-1)^{|(i^j)&z|} rho[i, j].
Density apply_mixture(const Density& rho, const PauliMixture& mix) {
  Density out = Density::Zero(rho.rows(), rho.cols());
  for (const auto& [p, coeff] : mix) {
    if (coeff == 0.0) continue;
    const auto x = static_cast<Eigen::Index>(p.x_bits());
    const auto z = static_cast<std::uint64_t>(p.z_bits());
    for (Eigen::Index j = 0; j < rho.cols(); ++j) {
      for (Eigen::Index i = 0; i < rho.rows(); ++i) {
        const bool odd = std::popcount(static_cast<std::uint64_t>(i ^ j) & z) & 1;
        out(i ^ x, j ^ x) += (odd ? -coeff : coeff) * rho(i, j);
      }
    }
  }
  return out;
}

PauliMixture as_mixture(const PauliChannel& ch) {
  return PauliMixture(ch.rates().begin(), ch.rates().end());
}

void require_covered(const Circuit& c, const NoiseModel& noise) {
  for (int j = 0; j < c.num_hard(); ++j) noise.at(c.hard(j));
}

std::vector<double> apply_readout(std::vector<double> dist, const Circuit& c,
                                  const std::optional<ReadoutError>& ro) {
  if (!ro) return dist;
  for (std::size_t k = 0; k < c.measured.size(); ++k) {
    const int q = c.measured[k];
    const double p10 = q < static_cast<int>(ro->p10.size()) ? ro->p10[q] : 0.0;
    const double p01 = q < static_cast<int>(ro->p01.size()) ? ro->p01[q] : 0.0;
    const std::size_t bit = std::size_t{1} << k;
    for (std::size_t s = 0; s < dist.size(); ++s) {
      if (s & bit) continue;
      const double a = dist[s], b = dist[s | bit];
      dist[s] = (1 - p10) * a + p01 * b;
      dist[s | bit] = p10 * a + (1 - p01) * b;
    }
  }
  return dist;
}

ExactResult finish(const Circuit& c, const Density& rho, std::span<const Observable> observables,
                   const std::optional<ReadoutError>& ro) {
  ExactResult r;
  r.num_measured = static_cast<int>(c.measured.size());
  const Eigen::VectorXd diag = rho.diagonal().real();
  r.distribution = apply_readout(marginal_probabilities(diag, c.measured), c, ro);
  for (const auto& o : observables) {
    if (o.kind == Observable::Kind::projector) {
      if (static_cast<int>(o.label.size()) != r.num_measured) {
        throw std::invalid_argument("projector '" + o.label + "' does not match the measured register");
      }
      r.expectations[o.label] = r.distribution[parse_bitstring(o.label)];
    } else {
      const PauliString p = PauliString::parse(o.label);
      if (p.num_qubits() != c.n) throw std::invalid_argument("Pauli observable width mismatch");
      r.expectations[o.label] = (pauli_matrix(p) * rho).trace().real();
    }
  }
  return r;
}

// Propagates |0><0| through the circuit; after_hard(j, rho) applies whatever
// follows hard cycle j.
template <typename AfterHard>
Density propagate(const Circuit& c, AfterHard after_hard) {
  const Eigen::Index dim = Eigen::Index{1} << c.n;
  Density rho = Density::Zero(dim, dim);
  rho(0, 0) = 1;
  for (std::size_t i = 0; i < c.cycles.size(); ++i) {
    conjugate_dm(rho, [&](Density& m) { apply_cycle(m, c.cycles[i]); });
    if (i % 2 == 1) after_hard(static_cast<int>(i / 2), rho);
  }
  return rho;
}

void require_exact_size(const Circuit& c) {
  if (c.n > kMaxExactNoisyQubits) {
    throw std::invalid_argument("noisy exact simulation supports n <= " +
                                std::to_string(kMaxExactNoisyQubits));
  }
}

}  // namespace

ShotRecord merge(const ShotRecord& a, const ShotRecord& b) {
  ShotRecord r = a;
  for (const auto& [k, v] : b.counts) r.counts[k] += v;
  r.total_shots += b.total_shots;
  return r;
}

std::vector<double> frequencies(const ShotRecord& r, int k) {
  std::vector<double> f(std::size_t{1} << k, 0.0);
  if (r.total_shots == 0) return f;
  for (const auto& [bits, n] : r.counts) {
    f[parse_bitstring(bits)] = static_cast<double>(n) / static_cast<double>(r.total_shots);
  }
  return f;
}

std::map<std::string, double> ExactResult::distribution_map() const {
  std::map<std::string, double> m;
  for (std::size_t s = 0; s < distribution.size(); ++s) m[bitstring(s, num_measured)] = distribution[s];
  return m;
}

std::uint64_t TrajectoryBackend::sample(const Circuit& c, Rng& rng) const {
  if (c.n > kMaxShotQubits) throw std::invalid_argument("trajectory simulation supports n <= 6");
  StateVector<double> psi = zero_state<double>(c.n);
  const std::uint64_t twirl_count = std::uint64_t{1} << (2 * c.n);
  const int m = c.num_hard();
  for (int j = 0; j < m; ++j) {
    const HardCycle& h = c.hard(j);
    const NoiseEntry& noise = noise_.at(h);
    apply_easy(psi, c.easy(j));
    PauliString twirl(c.n);
    if (rc_) {
      twirl = PauliString::from_index(c.n, rng.below(twirl_count));
      apply_pauli(psi, twirl);
    }
    apply_hard(psi, h);
    if (const auto* ch = std::get_if<PauliChannel>(&noise)) {
      apply_pauli(psi, ch->sample(rng));
    } else {
      const auto& co = std::get<CoherentNoise>(noise);
      apply_kq(psi, co.qubits, co.unitary);
    }
    if (rc_) apply_pauli(psi, conjugate_by_cycle(h, twirl).second);
  }
  apply_easy(psi, c.easy(m));

  const double u = rng.uniform();
  double acc = 0.0;
  Eigen::Index idx = psi.size() - 1;
  for (Eigen::Index i = 0; i < psi.size(); ++i) {
    acc += std::norm(psi(i));
    if (u < acc) {
      idx = i;
      break;
    }
  }
  std::uint64_t out = 0;
  for (std::size_t k = 0; k < c.measured.size(); ++k) {
    const int q = c.measured[k];
    std::uint64_t bit = (static_cast<std::uint64_t>(idx) >> q) & 1;
    if (noise_.readout) {
      const auto& ro = *noise_.readout;
      const double flip = bit ? (q < static_cast<int>(ro.p01.size()) ? ro.p01[q] : 0.0)
                              : (q < static_cast<int>(ro.p10.size()) ? ro.p10[q] : 0.0);
      if (flip > 0.0 && rng.bernoulli(flip)) bit ^= 1;
    }
    out |= bit << k;
  }
  return out;
}

ShotRecord run_shots(const Circuit& c, const Backend& backend, std::uint64_t shots,
                     std::uint64_t seed, int jobs) {
  require_valid(c);
  if (c.n > kMaxShotQubits) throw std::invalid_argument("trajectory simulation supports n <= 6");
  const int k = static_cast<int>(c.measured.size());
  auto parts = run_batches(shots, jobs, [&](std::uint64_t b, std::uint64_t count) {
    Rng rng(derive_seed(seed, b));
    std::vector<std::uint64_t> counts(std::size_t{1} << k, 0);
    for (std::uint64_t s = 0; s < count; ++s) ++counts[backend.sample(c, rng)];
    return counts;
  });
  ShotRecord r;
  r.total_shots = shots;
  r.seed = seed;
  std::vector<std::uint64_t> total(std::size_t{1} << k, 0);
  for (const auto& p : parts) {
    for (std::size_t s = 0; s < p.size(); ++s) total[s] += p[s];
  }
  for (std::size_t s = 0; s < total.size(); ++s) {
    if (total[s]) r.counts[bitstring(s, k)] = total[s];
  }
  return r;
}

ShotRecord run_shots(const Circuit& c, const NoiseModel& noise, std::uint64_t shots,
                     std::uint64_t seed, bool rc, int jobs) {
  require_valid(c);
  require_covered(c, noise);
  return run_shots(c, TrajectoryBackend(noise, rc), shots, seed, jobs);
}

ExactResult exact_run(const Circuit& c, const NoiseModel* noise,
                      std::span<const Observable> observables, const ExactOptions& opts) {
  require_valid(c);
  if (!noise) {
    if (c.n > kMaxShotQubits) throw std::invalid_argument("ideal simulation supports n <= 6");
    const StateVector<double> psi = ideal_state<double>(c);
    ExactResult r;
    r.num_measured = static_cast<int>(c.measured.size());
    const Eigen::VectorXd probs = psi.cwiseAbs2();
    r.distribution = marginal_probabilities(probs, c.measured);
    for (const auto& o : observables) {
      if (o.kind == Observable::Kind::projector) {
        r.expectations[o.label] = r.distribution.at(parse_bitstring(o.label));
      } else {
        StateVector<double> phi = psi;
        apply_pauli(phi, PauliString::parse(o.label), true);
        r.expectations[o.label] = psi.dot(phi).real();
      }
    }
    return r;
  }
  require_exact_size(c);
  require_covered(c, *noise);
  bool coherent = false;
  for (int j = 0; j < c.num_hard(); ++j) {
    coherent = coherent || std::holds_alternative<CoherentNoise>(noise->at(c.hard(j)));
  }
  if (!coherent) {
    const Density rho = propagate(c, [&](int j, Density& r) {
      r = apply_mixture(r, as_mixture(std::get<PauliChannel>(noise->at(c.hard(j)))));
    });
    return finish(c, rho, observables, noise->readout);
  }
  if (!opts.rc_average) {
    throw std::invalid_argument("coherent noise needs the rc-averaged exact mode");
  }
  if (opts.twirl_draws < 1) throw std::invalid_argument("twirl_draws must be positive");
  Rng rng(opts.seed);
  const Eigen::Index dim = Eigen::Index{1} << c.n;
  Density avg = Density::Zero(dim, dim);
  for (int t = 0; t < opts.twirl_draws; ++t) {
    const Circuit tc = randomized_compile(c, rng);
    avg += propagate(tc, [&](int j, Density& r) {
      const NoiseEntry& e = noise->at(tc.hard(j));
      if (const auto* ch = std::get_if<PauliChannel>(&e)) {
        r = apply_mixture(r, as_mixture(*ch));
      } else {
        const auto& co = std::get<CoherentNoise>(e);
        conjugate_dm(r, [&](Density& m) { apply_kq(m, co.qubits, co.unitary); });
      }
    });
  }
  avg /= static_cast<double>(opts.twirl_draws);
  return finish(c, avg, observables, noise->readout);
}

ExactResult exact_run_per_cycle(const Circuit& c, std::span<const PauliChannel> channels,
                                std::span<const Observable> observables,
                                const std::optional<ReadoutError>& readout) {
  require_valid(c);
  require_exact_size(c);
  if (static_cast<int>(channels.size()) != c.num_hard()) {
    throw std::invalid_argument("need one channel per hard cycle");
  }
  const Density rho =
      propagate(c, [&](int j, Density& r) { r = apply_mixture(r, as_mixture(channels[j])); });
  return finish(c, rho, observables, readout);
}

ExactResult exact_quasiprob_run(const Circuit& c, const NoiseModel& noise,
                                std::span<const PauliMixture> insertion_maps,
                                std::span<const Observable> observables) {
  require_valid(c);
  require_exact_size(c);
  require_covered(c, noise);
  if (static_cast<int>(insertion_maps.size()) != c.num_hard()) {
    throw std::invalid_argument("need one insertion map per hard cycle");
  }
  const Density rho = propagate(c, [&](int j, Density& r) {
    const NoiseEntry& e = noise.at(c.hard(j));
    const auto* ch = std::get_if<PauliChannel>(&e);
    if (!ch) throw std::invalid_argument("quasi-probability mode needs Pauli noise");
    r = apply_mixture(apply_mixture(r, as_mixture(*ch)), insertion_maps[j]);
  });
  return finish(c, rho, observables, noise.readout);
}

std::vector<double> ideal_distribution(const Circuit& c) { return exact_run(c, nullptr, {}).distribution; }

}  // namespace qem
