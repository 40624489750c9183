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

#include <cstdint>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

#include "qem/gates.hpp"
#include "qem/noise.hpp"
#include "qem/pauli.hpp"

namespace qem {

// Dense superoperators act on column-stacked density matrices, so
// vec(A rho B) = (B^T kron A) vec(rho). Sizes are 4^n x 4^n; keep n small.

template <typename Scalar = double, typename Derived>
MatrixXc<Scalar> superop_unitary(const Eigen::MatrixBase<Derived>& u) {
  const MatrixXc<Scalar> us = u.template cast<std::complex<Scalar>>();
  return Eigen::kroneckerProduct(us.conjugate(), us).eval();
}

template <typename Scalar = double>
MatrixXc<Scalar> superop_pauli_channel(const PauliChannel& ch) {
  const Eigen::Index d = Eigen::Index{1} << ch.num_qubits();
  MatrixXc<Scalar> s = MatrixXc<Scalar>::Zero(d * d, d * d);
  for (const auto& [p, r] : ch.rates()) s += Scalar(r) * superop_unitary<Scalar>(pauli_matrix<Scalar>(p));
  return s;
}

template <typename Scalar = double, typename Derived>
Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1> vec(const Eigen::MatrixBase<Derived>& rho) {
  MatrixXc<Scalar> m = rho.template cast<std::complex<Scalar>>();
  return Eigen::Map<Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>>(m.data(), m.size());
}

template <typename Scalar = double, typename Derived>
MatrixXc<Scalar> unvec(const Eigen::MatrixBase<Derived>& v) {
  const auto d = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(v.size()))));
  MatrixXc<Scalar> m = v.template cast<std::complex<Scalar>>();
  return Eigen::Map<MatrixXc<Scalar>>(m.data(), d, d);
}

/// Process (chi) matrix in the Pauli basis: L(rho) = sum_ab chi_ab P_a rho P_b,
/// with a, b in PauliString::index() order.
template <typename Scalar = double, typename Derived>
MatrixXc<Scalar> chi_from_superop(const Eigen::MatrixBase<Derived>& s, int n) {
  const Eigen::Index count = Eigen::Index{1} << (2 * n);
  const double norm = static_cast<double>(count);
  std::vector<MatrixXc<Scalar>> paulis;
  for (Eigen::Index a = 0; a < count; ++a) {
    paulis.push_back(pauli_matrix<Scalar>(PauliString::from_index(n, static_cast<std::uint64_t>(a))));
  }
  MatrixXc<Scalar> chi(count, count);
  for (Eigen::Index a = 0; a < count; ++a) {
    for (Eigen::Index b = 0; b < count; ++b) {
      const MatrixXc<Scalar> basis = Eigen::kroneckerProduct(paulis[b].conjugate(), paulis[a]).eval();
      chi(a, b) = (basis.adjoint() * s.template cast<std::complex<Scalar>>()).trace() / Scalar(norm);
    }
  }
  return chi;
}

/// chi_ab = c_a conj(c_b) where V = sum_a c_a P_a.
template <typename Scalar = double, typename Derived>
MatrixXc<Scalar> chi_from_unitary(const Eigen::MatrixBase<Derived>& v, int n) {
  const Eigen::Index count = Eigen::Index{1} << (2 * n);
  const Scalar dim = Scalar(Eigen::Index{1} << n);
  Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1> c(count);
  for (Eigen::Index a = 0; a < count; ++a) {
    const auto p = pauli_matrix<Scalar>(PauliString::from_index(n, static_cast<std::uint64_t>(a)));
    c(a) = (p.adjoint() * v.template cast<std::complex<Scalar>>()).trace() / dim;
  }
  return c * c.adjoint();
}

}  // namespace qem
