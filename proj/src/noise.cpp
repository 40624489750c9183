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

#include "qem/noise.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qem {

PauliChannel::PauliChannel(int n) : n_(n), rates_{{PauliString(n), 1.0}} { rebuild_cdf(); }

PauliChannel PauliChannel::from_rates(int n, const std::map<PauliString, double>& rates) {
  const PauliString id(n);
  double others = 0.0;
  bool has_identity = false;
  for (const auto& [p, r] : rates) {
    if (p.num_qubits() != n) throw std::invalid_argument("Pauli width differs from channel width");
    if (!(r >= -1e-12 && r <= 1.0 + 1e-12)) {
      throw std::invalid_argument("rate of " + p.str() + " outside [0, 1]");
    }
    if (p == id) {
      has_identity = true;
    } else {
      others += r;
    }
  }
  const double e0 = has_identity ? rates.at(id) : 1.0 - others;
  if (e0 < -1e-12 || std::abs(e0 + others - 1.0) > 1e-12) {
    throw std::invalid_argument("channel rates do not sum to 1");
  }
  PauliChannel ch;
  ch.n_ = n;
  double dropped = 0.0;
  for (const auto& [p, r] : rates) {
    if (p == id) continue;
    if (r < kRateFloor) {
      dropped += r;
    } else {
      ch.rates_.emplace_back(p, r);
    }
  }
  ch.rates_.emplace_back(id, std::max(0.0, e0 + dropped));
  std::sort(ch.rates_.begin(), ch.rates_.end());
  ch.rebuild_cdf();
  return ch;
}

void PauliChannel::rebuild_cdf() {
  cdf_.clear();
  double acc = 0.0;
  for (const auto& pr : rates_) {
    acc += pr.second;
    cdf_.push_back(acc);
  }
}

double PauliChannel::rate(const PauliString& p) const {
  auto it = std::lower_bound(rates_.begin(), rates_.end(), p,
                             [](const auto& pr, const PauliString& key) { return pr.first < key; });
  return (it != rates_.end() && it->first == p) ? it->second : 0.0;
}

PauliString PauliChannel::sample(Rng& rng) const {
  if (cdf_.empty() || std::abs(cdf_.back() - 1.0) > 1e-9) {
    throw std::invalid_argument("cannot sample an unnormalized channel");
  }
  const double u = rng.uniform() * cdf_.back();
  auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  if (it == cdf_.end()) --it;
  return rates_[static_cast<std::size_t>(it - cdf_.begin())].first;
}

PauliChannel convolve(const PauliChannel& a, const PauliChannel& b) {
  if (a.num_qubits() != b.num_qubits()) throw std::invalid_argument("channel widths differ");
  std::map<PauliString, double> out;
  for (const auto& [pa, ra] : a.rates()) {
    for (const auto& [pb, rb] : b.rates()) out[pauli_mul_unsigned(pa, pb)] += ra * rb;
  }
  // Renormalize away rounding so from_rates accepts the total.
  double total = 0.0;
  for (const auto& kv : out) total += kv.second;
  for (auto& kv : out) kv.second /= total;
  return PauliChannel::from_rates(a.num_qubits(), out);
}

PauliChannel channel_power(const PauliChannel& ch, int alpha) {
  if (alpha < 1) throw std::invalid_argument("channel power needs alpha >= 1");
  PauliChannel out = ch;
  for (int k = 1; k < alpha; ++k) out = convolve(out, ch);
  return out;
}

double pauli_fidelity(const PauliChannel& ch, const PauliString& b) {
  double f = 0.0;
  for (const auto& [a, r] : ch.rates()) f += symplectic_inner(a, b) ? -r : r;
  return f;
}

void NoiseModel::set(const HardCycle& cycle, NoiseEntry noise) {
  if (n_ == 0) n_ = cycle.n;
  if (cycle.n != n_) throw std::invalid_argument("cycle width differs from noise model width");
  if (const auto* ch = std::get_if<PauliChannel>(&noise); ch && ch->num_qubits() != n_) {
    throw std::invalid_argument("channel width differs from noise model width");
  }
  if (const auto* co = std::get_if<CoherentNoise>(&noise)) {
    const Eigen::Index dim = Eigen::Index{1} << co->qubits.size();
    if (co->unitary.rows() != dim || co->unitary.cols() != dim) {
      throw std::invalid_argument("coherent noise matrix does not match its qubit list");
    }
    for (int q : co->qubits) {
      if (q < 0 || q >= n_) throw std::invalid_argument("coherent noise qubit out of range");
    }
  }
  entries_.insert_or_assign(cycle.signature(), Entry{cycle, std::move(noise)});
}

const NoiseEntry* NoiseModel::find(const HardCycle& cycle) const {
  auto it = entries_.find(cycle.signature());
  return it == entries_.end() ? nullptr : &it->second.noise;
}

const NoiseEntry& NoiseModel::at(const HardCycle& cycle) const {
  if (const auto* e = find(cycle)) return *e;
  throw UncoveredCycle("no noise entry for hard cycle " + cycle.signature());
}

NoiseModel NoiseModel::noiseless_for(const Circuit& c) {
  NoiseModel m(c.n);
  for (const auto& h : distinct_hard_cycles(c)) m.set(h, PauliChannel(c.n));
  return m;
}

std::vector<HardCycle> distinct_hard_cycles(const Circuit& c) {
  std::vector<HardCycle> out;
  std::vector<std::string> seen;
  for (const auto& cyc : c.cycles) {
    const auto* h = std::get_if<HardCycle>(&cyc);
    if (!h) continue;
    const std::string sig = h->signature();
    if (std::find(seen.begin(), seen.end(), sig) == seen.end()) {
      seen.push_back(sig);
      out.push_back(*h);
    }
  }
  return out;
}

PauliChannel synthetic_cycle_channel(const HardCycle& cycle, double total_error) {
  if (!(total_error >= 0.0 && total_error < 1.0)) {
    throw std::invalid_argument("total error must lie in [0, 1)");
  }
  const int n = cycle.n;
  std::vector<int> active, idle;
  const std::uint64_t mask = cycle.active_mask();
  for (int q = 0; q < n; ++q) ((mask >> q) & 1 ? active : idle).push_back(q);

  double w_idle_z = 0.60, w_active_z = 0.15, w_zz = 0.10, w_xy = 0.15;
  if (idle.empty()) {
    w_idle_z = 0.0;
    w_active_z = 0.50;
    w_zz = 0.20;
    w_xy = 0.30;
  }
  if (active.empty()) {
    w_idle_z = 1.0;
    w_active_z = w_zz = w_xy = 0.0;
  }
  std::map<PauliString, double> rates;
  for (int q : idle) rates[PauliString::single(n, q, 'Z')] += total_error * w_idle_z / idle.size();
  for (int q : active) {
    rates[PauliString::single(n, q, 'Z')] += total_error * w_active_z / active.size();
    rates[PauliString::single(n, q, 'X')] += total_error * w_xy / (2.0 * active.size());
    rates[PauliString::single(n, q, 'Y')] += total_error * w_xy / (2.0 * active.size());
  }
  for (const auto& g : cycle.gates) {
    PauliString zz(n);
    zz.set(g.q0, 'Z');
    zz.set(g.q1, 'Z');
    rates[zz] += total_error * w_zz / cycle.gates.size();
  }
  return PauliChannel::from_rates(n, rates);
}

NoiseModel synthetic_noise(const Circuit& c, double total_error) {
  NoiseModel m(c.n);
  for (const auto& h : distinct_hard_cycles(c)) m.set(h, synthetic_cycle_channel(h, total_error));
  return m;
}

}  // namespace qem
