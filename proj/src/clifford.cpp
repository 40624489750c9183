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

#include "qem/clifford.hpp"

#include <array>
#include <string_view>

#include "qem/gates.hpp"

namespace qem {

namespace {

using Signed = std::pair<Phase, PauliString>;

Signed times(const Signed& a, const PauliString& b, Phase b_phase = Phase::one()) {
  auto [ph, c] = pauli_mul(a.second, b);
  return {a.first * b_phase * ph, c};
}

// Conjugates p by a map given through the images of X_q and Z_q.
template <typename ImageX, typename ImageZ>
Signed conjugate_generic(const PauliString& p, ImageX image_x, ImageZ image_z) {
  const int n = p.num_qubits();
  Signed acc{Phase::from_log_i(std::popcount(p.x_bits() & p.z_bits())), PauliString(n)};
  for (int q = 0; q < n; ++q) {
    if ((p.x_bits() >> q) & 1) {
      auto [ph, img] = image_x(q);
      acc = times(acc, img, ph);
    }
  }
  for (int q = 0; q < n; ++q) {
    if ((p.z_bits() >> q) & 1) {
      auto [ph, img] = image_z(q);
      acc = times(acc, img, ph);
    }
  }
  return acc;
}

Signed conjugate_gate(const TwoQubitGate& g, const PauliString& p) {
  const int n = p.num_qubits();
  const std::uint64_t a = std::uint64_t{1} << g.q0;
  const std::uint64_t b = std::uint64_t{1} << g.q1;
  auto image_x = [&](int q) -> Signed {
    const std::uint64_t bit = std::uint64_t{1} << q;
    if (g.kind == GateKind::cz) {
      if (bit == a) return {Phase::one(), PauliString(n, a, b)};
      if (bit == b) return {Phase::one(), PauliString(n, b, a)};
    } else if (bit == a) {
      return {Phase::one(), PauliString(n, a | b, 0)};
    }
    return {Phase::one(), PauliString(n, bit, 0)};
  };
  auto image_z = [&](int q) -> Signed {
    const std::uint64_t bit = std::uint64_t{1} << q;
    if (g.kind == GateKind::cx && bit == b) return {Phase::one(), PauliString(n, 0, a | b)};
    return {Phase::one(), PauliString(n, 0, bit)};
  };
  return conjugate_generic(p, image_x, image_z);
}

constexpr std::array<std::string_view, 8> kCliffordNames = {"i", "x",   "y",  "z",
                                                            "h", "s", "sdg", "sx"};

// Identifies u sigma u^dag as phase * Pauli by comparing against all four.
std::pair<Phase, char> image_1q(const Eigen::Matrix2cd& u, char sigma) {
  const Eigen::Matrix2cd m = u * pauli_1q(sigma) * u.adjoint();
  for (char l : {'I', 'X', 'Y', 'Z'}) {
    const Eigen::Matrix2cd p = pauli_1q(l);
    for (int k = 0; k < 4; ++k) {
      const Phase ph = Phase::from_log_i(k);
      if ((m - ph.value() * p).cwiseAbs().maxCoeff() < 1e-9) return {ph, l};
    }
  }
  throw UnsupportedGate("gate does not map Paulis to Paulis");
}

}  // namespace

std::pair<Phase, PauliString> conjugate_by_cycle(const HardCycle& cycle, const PauliString& p) {
  if (cycle.n != p.num_qubits()) throw std::invalid_argument("cycle and Pauli widths differ");
  Signed acc{Phase::one(), p};
  for (const auto& g : cycle.gates) {
    auto [ph, c] = conjugate_gate(g, acc.second);
    acc = {acc.first * ph, c};
  }
  return acc;
}

std::pair<Phase, PauliString> conjugate_by_cycle(const EasyCycle& cycle, const PauliString& p) {
  const int n = p.num_qubits();
  if (cycle.num_qubits() != n) throw std::invalid_argument("cycle and Pauli widths differ");
  std::vector<std::array<std::pair<Phase, char>, 2>> images(static_cast<std::size_t>(n));
  for (int q = 0; q < n; ++q) {
    const auto& g = cycle.gates[q];
    bool known = false;
    for (auto name : kCliffordNames) known = known || g.name == name;
    if (!known) throw UnsupportedGate("cannot conjugate through gate '" + g.name + "'");
    images[q] = {image_1q(g.matrix, 'X'), image_1q(g.matrix, 'Z')};
  }
  auto lift = [n](const std::pair<Phase, char>& img, int q) -> Signed {
    return {img.first, PauliString::single(n, q, img.second)};
  };
  return conjugate_generic(
      p, [&](int q) { return lift(images[q][0], q); }, [&](int q) { return lift(images[q][1], q); });
}

}  // namespace qem
