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
#include <span>
#include <string_view>

#include <Eigen/Dense>

namespace qem {

template <typename Scalar = double>
using Matrix2c = Eigen::Matrix<std::complex<Scalar>, 2, 2>;

template <typename Scalar = double>
using MatrixXc = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;

/// Matrix of a named single-qubit gate.
///
/// Parameter-free: i, x, y, z, h, s, sdg, t, tdg, sx (the X_{pi/2} pulse).
/// One angle: rx, ry, rz (exp(-i theta P / 2)), p (diag(1, e^{i phi})).
/// Three angles: u3(theta, phi, lambda).
///
/// Throws std::invalid_argument for unknown names or a wrong parameter count.
Eigen::Matrix2cd gate_matrix(std::string_view name, std::span<const double> params = {});

/// True when `name` is accepted by gate_matrix.
bool is_known_gate(std::string_view name);

/// Single-qubit Pauli for a label in {I, X, Y, Z}.
Eigen::Matrix2cd pauli_1q(char label);

template <typename Derived>
double unitarity_defect(const Eigen::MatrixBase<Derived>& u) {
  using Plain = typename Derived::PlainObject;
  return (u.adjoint() * u - Plain::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
}

/// Frobenius distance between two unitaries after removing the relative
/// global phase that best aligns them.
template <typename DA, typename DB>
double distance_up_to_phase(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b) {
  const auto overlap = (b.adjoint() * a).trace();
  const double mag = std::abs(overlap);
  const auto phase = mag > 0 ? overlap / mag : typename DA::Scalar(1);
  return (a - phase * b).norm();
}

}  // namespace qem
