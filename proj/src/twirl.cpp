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

#include "qem/twirl.hpp"

#include <map>
#include <stdexcept>

#include "qem/clifford.hpp"
#include "qem/gates.hpp"
#include "qem/statevector.hpp"
#include "qem/superop.hpp"

namespace qem {

namespace {

// Replaces slot q of an easy cycle by after * gate * before, keeping the
// named form when both Paulis are trivial.
void dress(EasyGate& g, char before, char after) {
  if (before == 'I' && after == 'I') return;
  g = EasyGate::from_matrix(pauli_1q(after) * g.matrix * pauli_1q(before));
}

}  // namespace

Circuit randomized_compile(const Circuit& c, std::span<const PauliString> twirls) {
  require_valid(c);
  const int m = c.num_hard();
  if (static_cast<int>(twirls.size()) != m) throw std::invalid_argument("need one twirl per hard cycle");
  Circuit out = c;
  for (int j = 0; j < m; ++j) {
    const PauliString& t = twirls[j];
    const PauliString corr = conjugate_by_cycle(c.hard(j), t).second;
    EasyCycle& before = out.easy(j);
    EasyCycle& after = out.easy(j + 1);
    for (int q = 0; q < c.n; ++q) {
      dress(before.gates[q], 'I', t.at(q));
      dress(after.gates[q], corr.at(q), 'I');
    }
  }
  return out;
}

Circuit randomized_compile(const Circuit& c, Rng& rng) {
  std::vector<PauliString> twirls;
  const std::uint64_t count = std::uint64_t{1} << (2 * c.n);
  for (int j = 0; j < c.num_hard(); ++j) twirls.push_back(PauliString::from_index(c.n, rng.below(count)));
  return randomized_compile(c, twirls);
}

Eigen::MatrixXcd embed_unitary(int n, const CoherentNoise& noise) {
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(Eigen::Index{1} << n, Eigen::Index{1} << n);
  apply_kq(u, noise.qubits, noise.unitary);
  return u;
}

PauliChannel effective_pauli_channel(const HardCycle& cycle, const NoiseEntry& noise) {
  if (cycle.n > 4) throw std::invalid_argument("effective channel needs n <= 4");
  if (const auto* ch = std::get_if<PauliChannel>(&noise)) return *ch;
  const int n = cycle.n;
  const Eigen::MatrixXcd v = embed_unitary(n, std::get<CoherentNoise>(noise));
  const double dim = static_cast<double>(Eigen::Index{1} << n);
  std::map<PauliString, double> rates;
  double total = 0.0;
  for (std::uint64_t a = 0; a < (std::uint64_t{1} << (2 * n)); ++a) {
    const PauliString p = PauliString::from_index(n, a);
    const double r = std::norm((pauli_matrix(p).adjoint() * v).trace() / dim);
    rates[p] = r;
    total += r;
  }
  for (auto& kv : rates) kv.second /= total;
  return PauliChannel::from_rates(n, rates);
}

}  // namespace qem
