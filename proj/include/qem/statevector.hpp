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

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "qem/circuit.hpp"
#include "qem/gates.hpp"
#include "qem/pauli.hpp"

namespace qem {

// Kernels act on every column of a 2^n-row matrix, so the same code updates a
// statevector (one column), a batch of states, or the left factor of U rho U^dag.
// Row index bit q is qubit q.

template <typename Scalar = double>
using StateVector = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;

template <typename Scalar = double>
StateVector<Scalar> zero_state(int n) {
  StateVector<Scalar> psi = StateVector<Scalar>::Zero(Eigen::Index{1} << n);
  psi(0) = 1;
  return psi;
}

template <typename Derived, typename U>
void apply_1q(Eigen::MatrixBase<Derived>& a, int q, const Eigen::MatrixBase<U>& u) {
  using S = typename Derived::Scalar;
  const Eigen::Index bit = Eigen::Index{1} << q;
  const S u00 = S(u(0, 0)), u01 = S(u(0, 1)), u10 = S(u(1, 0)), u11 = S(u(1, 1));
  for (Eigen::Index c = 0; c < a.cols(); ++c) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      if (i & bit) continue;
      const S x = a(i, c);
      const S y = a(i | bit, c);
      a(i, c) = u00 * x + u01 * y;
      a(i | bit, c) = u10 * x + u11 * y;
    }
  }
}

template <typename Derived>
void apply_cz(Eigen::MatrixBase<Derived>& a, int q0, int q1) {
  const Eigen::Index mask = (Eigen::Index{1} << q0) | (Eigen::Index{1} << q1);
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    if ((i & mask) == mask) a.row(i) *= -1;
  }
}

template <typename Derived>
void apply_cx(Eigen::MatrixBase<Derived>& a, int control, int target) {
  const Eigen::Index cb = Eigen::Index{1} << control;
  const Eigen::Index tb = Eigen::Index{1} << target;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    if ((i & cb) && !(i & tb)) a.row(i).swap(a.row(i | tb));
  }
}

/// Applies the Pauli operator. With `with_phase` false the global factor
/// i^{|x&z|} is dropped, which leaves P rho P^dag unchanged.
template <typename Derived>
void apply_pauli(Eigen::MatrixBase<Derived>& a, const PauliString& p, bool with_phase = false) {
  using S = typename Derived::Scalar;
  if (p.is_identity()) return;
  const auto x = static_cast<Eigen::Index>(p.x_bits());
  const auto z = static_cast<Eigen::Index>(p.z_bits());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    if (std::popcount(static_cast<std::uint64_t>(i & z)) & 1) a.row(i) *= -1;
  }
  if (x != 0) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      const Eigen::Index j = i ^ x;
      if (i < j) a.row(i).swap(a.row(j));
    }
  }
  if (with_phase) {
    const Phase ph = Phase::from_log_i(std::popcount(p.x_bits() & p.z_bits()));
    if (ph != Phase::one()) a *= S(ph.template value<typename S::value_type>());
  }
}

/// Applies a dense 2^k x 2^k unitary to the listed qubits; local basis bit l
/// corresponds to qubits[l].
template <typename Derived, typename U>
void apply_kq(Eigen::MatrixBase<Derived>& a, std::span<const int> qubits,
              const Eigen::MatrixBase<U>& u) {
  using S = typename Derived::Scalar;
  const int k = static_cast<int>(qubits.size());
  const Eigen::Index local_dim = Eigen::Index{1} << k;
  Eigen::Index mask = 0;
  std::vector<Eigen::Index> offset(static_cast<std::size_t>(local_dim), 0);
  for (int l = 0; l < k; ++l) mask |= Eigen::Index{1} << qubits[l];
  for (Eigen::Index s = 0; s < local_dim; ++s) {
    for (int l = 0; l < k; ++l) {
      if ((s >> l) & 1) offset[s] |= Eigen::Index{1} << qubits[l];
    }
  }
  const Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic> um = u.template cast<S>();
  Eigen::Matrix<S, Eigen::Dynamic, 1> in(local_dim);
  for (Eigen::Index c = 0; c < a.cols(); ++c) {
    for (Eigen::Index base = 0; base < a.rows(); ++base) {
      if (base & mask) continue;
      for (Eigen::Index s = 0; s < local_dim; ++s) in(s) = a(base | offset[s], c);
      const Eigen::Matrix<S, Eigen::Dynamic, 1> out = um * in;
      for (Eigen::Index s = 0; s < local_dim; ++s) a(base | offset[s], c) = out(s);
    }
  }
}

template <typename Derived>
void apply_easy(Eigen::MatrixBase<Derived>& a, const EasyCycle& e) {
  for (int q = 0; q < e.num_qubits(); ++q) {
    if (!e.gates[q].is_identity()) apply_1q(a, q, e.gates[q].matrix);
  }
}

template <typename Derived>
void apply_hard(Eigen::MatrixBase<Derived>& a, const HardCycle& h) {
  for (const auto& g : h.gates) {
    if (g.kind == GateKind::cz) {
      apply_cz(a, g.q0, g.q1);
    } else {
      apply_cx(a, g.q0, g.q1);
    }
  }
}

template <typename Derived>
void apply_cycle(Eigen::MatrixBase<Derived>& a, const Cycle& c) {
  if (const auto* e = std::get_if<EasyCycle>(&c)) {
    apply_easy(a, *e);
  } else {
    apply_hard(a, std::get<HardCycle>(c));
  }
}

/// Noiseless output state of the circuit from |0...0>.
template <typename Scalar = double>
StateVector<Scalar> ideal_state(const Circuit& c) {
  StateVector<Scalar> psi = zero_state<Scalar>(c.n);
  for (const auto& cyc : c.cycles) apply_cycle(psi, cyc);
  return psi;
}

/// Dense unitary of the whole circuit.
template <typename Scalar = double>
MatrixXc<Scalar> circuit_unitary(const Circuit& c) {
  MatrixXc<Scalar> u = MatrixXc<Scalar>::Identity(Eigen::Index{1} << c.n, Eigen::Index{1} << c.n);
  for (const auto& cyc : c.cycles) apply_cycle(u, cyc);
  return u;
}

template <typename Scalar = double>
MatrixXc<Scalar> hard_cycle_unitary(const HardCycle& h) {
  MatrixXc<Scalar> u = MatrixXc<Scalar>::Identity(Eigen::Index{1} << h.n, Eigen::Index{1} << h.n);
  apply_hard(u, h);
  return u;
}

/// Probability of each outcome of the measured register, indexed with bit i
/// of the outcome equal to the value read on measured[i].
template <typename Derived>
std::vector<double> marginal_probabilities(const Eigen::MatrixBase<Derived>& diag_probs,
                                           std::span<const int> measured) {
  std::vector<double> out(std::size_t{1} << measured.size(), 0.0);
  for (Eigen::Index i = 0; i < diag_probs.size(); ++i) {
    std::uint64_t o = 0;
    for (std::size_t k = 0; k < measured.size(); ++k) {
      o |= static_cast<std::uint64_t>((i >> measured[k]) & 1) << k;
    }
    out[o] += static_cast<double>(diag_probs(i));
  }
  return out;
}

}  // namespace qem
