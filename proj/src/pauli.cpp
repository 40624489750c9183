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

#include "qem/pauli.hpp"

#include <stdexcept>

namespace qem {

namespace {

std::uint64_t mask_for(int n) {
  return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
}

void require_same_length(const PauliString& a, const PauliString& b) {
  if (a.num_qubits() != b.num_qubits()) {
    throw std::invalid_argument("Pauli length mismatch: " + std::to_string(a.num_qubits()) +
                                " vs " + std::to_string(b.num_qubits()));
  }
}

}  // namespace

std::string to_string(Phase p) {
  switch (p.log_i()) {
    case 0: return "+1";
    case 1: return "+i";
    case 2: return "-1";
    default: return "-i";
  }
}

PauliString::PauliString(int n) : PauliString(n, 0, 0) {}

PauliString::PauliString(int n, std::uint64_t x, std::uint64_t z) : n_(n), x_(x), z_(z) {
  if (n < 0 || n > kMaxPauliQubits) {
    throw std::invalid_argument("Pauli string length out of range: " + std::to_string(n));
  }
  if (((x | z) & ~mask_for(n)) != 0) {
    throw std::invalid_argument("Pauli bits set beyond qubit count");
  }
}

PauliString PauliString::parse(std::string_view text) {
  PauliString p(static_cast<int>(text.size()));
  for (int q = 0; q < p.n_; ++q) p.set(q, text[q]);
  return p;
}

PauliString PauliString::single(int n, int qubit, char label) {
  PauliString p(n);
  p.set(qubit, label);
  return p;
}

char PauliString::at(int qubit) const {
  const bool x = (x_ >> qubit) & 1;
  const bool z = (z_ >> qubit) & 1;
  if (x && z) return 'Y';
  if (x) return 'X';
  if (z) return 'Z';
  return 'I';
}

void PauliString::set(int qubit, char label) {
  if (qubit < 0 || qubit >= n_) {
    throw std::out_of_range("qubit index " + std::to_string(qubit) + " outside Pauli string");
  }
  const std::uint64_t bit = std::uint64_t{1} << qubit;
  bool x = false;
  bool z = false;
  switch (label) {
    case 'I': case 'i': case '_': break;
    case 'X': case 'x': x = true; break;
    case 'Y': case 'y': x = z = true; break;
    case 'Z': case 'z': z = true; break;
    default:
      throw std::invalid_argument(std::string("not a Pauli label: '") + label + "'");
  }
  x_ = x ? (x_ | bit) : (x_ & ~bit);
  z_ = z ? (z_ | bit) : (z_ & ~bit);
}

std::string PauliString::str() const {
  std::string s(static_cast<std::size_t>(n_), 'I');
  for (int q = 0; q < n_; ++q) s[q] = at(q);
  return s;
}

std::uint64_t PauliString::index() const {
  if (n_ > 32) throw std::out_of_range("Pauli index needs n <= 32");
  std::uint64_t idx = 0;
  for (int q = 0; q < n_; ++q) {
    const std::uint64_t code = ((x_ >> q) & 1) | (((z_ >> q) & 1) << 1);
    idx |= code << (2 * q);
  }
  return idx;
}

PauliString PauliString::from_index(int n, std::uint64_t index) {
  std::uint64_t x = 0;
  std::uint64_t z = 0;
  for (int q = 0; q < n; ++q) {
    const std::uint64_t code = (index >> (2 * q)) & 3;
    x |= (code & 1) << q;
    z |= (code >> 1) << q;
  }
  return PauliString(n, x, z);
}

std::pair<Phase, PauliString> pauli_mul(const PauliString& a, const PauliString& b) {
  require_same_length(a, b);
  // Each operand is i^{|x&z|} X^x Z^z. Moving Z^{za} past X^{xb} costs (-1)^{|za&xb|}.
  const std::uint64_t cx = a.x_bits() ^ b.x_bits();
  const std::uint64_t cz = a.z_bits() ^ b.z_bits();
  const int log_i = std::popcount(a.x_bits() & a.z_bits()) +
                    std::popcount(b.x_bits() & b.z_bits()) +
                    2 * std::popcount(a.z_bits() & b.x_bits()) - std::popcount(cx & cz);
  return {Phase::from_log_i(log_i), PauliString(a.num_qubits(), cx, cz)};
}

PauliString pauli_mul_unsigned(const PauliString& a, const PauliString& b) {
  require_same_length(a, b);
  return PauliString(a.num_qubits(), a.x_bits() ^ b.x_bits(), a.z_bits() ^ b.z_bits());
}

int symplectic_inner(const PauliString& a, const PauliString& b) {
  require_same_length(a, b);
  return (std::popcount(a.x_bits() & b.z_bits()) + std::popcount(a.z_bits() & b.x_bits())) & 1;
}

}  // namespace qem
