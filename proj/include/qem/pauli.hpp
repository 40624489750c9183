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

#include <bit>
#include <complex>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <utility>

#include <Eigen/Dense>

namespace qem {

inline constexpr int kMaxPauliQubits = 64;

/// Scalar in {+1, +i, -1, -i}, stored as the exponent of i modulo 4.
class Phase {
 public:
  constexpr Phase() = default;
  static constexpr Phase from_log_i(int k) { return Phase(k); }

  static constexpr Phase one() { return Phase(0); }
  static constexpr Phase i() { return Phase(1); }
  static constexpr Phase minus_one() { return Phase(2); }
  static constexpr Phase minus_i() { return Phase(3); }

  constexpr int log_i() const { return log_i_; }
  constexpr bool is_real() const { return (log_i_ & 1) == 0; }
  /// +1 or -1. Only meaningful when is_real().
  constexpr int sign() const { return log_i_ == 0 ? 1 : -1; }

  template <typename Scalar = double>
  std::complex<Scalar> value() const {
    switch (log_i_) {
      case 0: return {1, 0};
      case 1: return {0, 1};
      case 2: return {-1, 0};
      default: return {0, -1};
    }
  }

  constexpr Phase operator*(Phase o) const { return Phase(log_i_ + o.log_i_); }
  constexpr Phase& operator*=(Phase o) { return *this = *this * o; }
  constexpr Phase conj() const { return Phase(-log_i_); }
  constexpr bool operator==(const Phase&) const = default;

 private:
  explicit constexpr Phase(int k) : log_i_(((k % 4) + 4) % 4) {}
  int log_i_ = 0;
};

std::string to_string(Phase p);

/// Phase-free n-qubit Pauli operator stored as X and Z bitmasks. Bit q of
/// the masks refers to qubit q; Y on a qubit sets both bits. The text form
/// puts qubit 0 leftmost ("XZII" is X on qubit 0, Z on qubit 1).
class PauliString {
 public:
  PauliString() = default;
  /// Identity on `n` qubits.
  explicit PauliString(int n);
  PauliString(int n, std::uint64_t x, std::uint64_t z);

  /// Parses a string over {I, X, Y, Z}. Throws std::invalid_argument.
  static PauliString parse(std::string_view text);
  static PauliString single(int n, int qubit, char label);

  int num_qubits() const { return n_; }
  std::uint64_t x_bits() const { return x_; }
  std::uint64_t z_bits() const { return z_; }

  /// 'I', 'X', 'Y' or 'Z' on `qubit`.
  char at(int qubit) const;
  void set(int qubit, char label);

  bool is_identity() const { return (x_ | z_) == 0; }
  std::uint64_t support() const { return x_ | z_; }
  std::string str() const;

  /// Dense index in [0, 4^n): two bits per qubit, (z << 1 | x) at position 2q.
  std::uint64_t index() const;
  static PauliString from_index(int n, std::uint64_t index);

  bool operator==(const PauliString&) const = default;
  auto operator<=>(const PauliString& o) const {
    if (auto c = n_ <=> o.n_; c != 0) return c;
    if (auto c = x_ <=> o.x_; c != 0) return c;
    return z_ <=> o.z_;
  }

 private:
  int n_ = 0;
  std::uint64_t x_ = 0;
  std::uint64_t z_ = 0;
};

constexpr std::uint64_t mix_pauli_bits(std::uint64_t x, std::uint64_t z, int n) {
  std::uint64_t h = x * 0x9e3779b97f4a7c15ULL;
  h ^= z + 0x632be59bd9b4e019ULL + (h << 6) + (h >> 2);
  return h ^ static_cast<std::uint64_t>(n);
}

/// Number of non-identity positions.
inline int weight(const PauliString& p) { return std::popcount(p.support()); }

/// Returns (phase, c) with A * B = phase * C as 2^n x 2^n matrices.
/// Throws std::invalid_argument on length mismatch.
std::pair<Phase, PauliString> pauli_mul(const PauliString& a, const PauliString& b);

/// Phase-free product, used wherever only the Pauli label matters.
PauliString pauli_mul_unsigned(const PauliString& a, const PauliString& b);

/// 0 when A and B commute, 1 when they anticommute.
int symplectic_inner(const PauliString& a, const PauliString& b);

/// Dense matrix of the Pauli string; qubit q is bit q of the basis index.
template <typename Scalar = double>
Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic> pauli_matrix(
    const PauliString& p) {
  using C = std::complex<Scalar>;
  const std::uint64_t dim = std::uint64_t{1} << p.num_qubits();
  Eigen::Matrix<C, Eigen::Dynamic, Eigen::Dynamic> m =
      Eigen::Matrix<C, Eigen::Dynamic, Eigen::Dynamic>::Zero(dim, dim);
  // P|i> = i^{|x&z|} (-1)^{|i&z|} |i ^ x>
  const Phase base = Phase::from_log_i(std::popcount(p.x_bits() & p.z_bits()));
  for (std::uint64_t col = 0; col < dim; ++col) {
    Phase ph = base;
    if (std::popcount(col & p.z_bits()) & 1) ph *= Phase::minus_one();
    m(col ^ p.x_bits(), col) = ph.template value<Scalar>();
  }
  return m;
}

}  // namespace qem

template <>
struct std::hash<qem::PauliString> {
  std::size_t operator()(const qem::PauliString& p) const noexcept {
    return static_cast<std::size_t>(
        qem::mix_pauli_bits(p.x_bits(), p.z_bits(), p.num_qubits()));
  }
};
