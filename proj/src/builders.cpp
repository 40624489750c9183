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

#include "qem/builders.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

#include "qem/rng.hpp"

namespace qem {

Circuit build_w_state_circuit(int n) {
  if (n < 2 || n > 6) throw std::invalid_argument("W state needs 2 <= n <= 6");
  CircuitBuilder b(n);
  b.gate(0, "x");
  for (int k = 1; k < n; ++k) {
    const int t = n - k + 1;
    const double theta = 2.0 * std::acos(std::sqrt(1.0 / t));
    const int c = k - 1;
    // controlled-R_Y(theta) = R_Y(theta/2) cX R_Y(-theta/2) cX on the target
    b.cx_via_cz(c, k);
    b.gate(k, "ry", {-theta / 2});
    b.cx_via_cz(c, k);
    b.gate(k, "ry", {theta / 2});
    b.cx_via_cz(k, c);
  }
  std::vector<int> measured(static_cast<std::size_t>(n));
  for (int q = 0; q < n; ++q) measured[q] = q;
  return b.finish(std::move(measured));
}

namespace {

// Tracks where each logical qubit currently sits on the line and inserts
// swaps so two-qubit gates only ever touch neighbours.
class LineRouter {
 public:
  LineRouter(CircuitBuilder& b, int n) : b_(b), phys_(static_cast<std::size_t>(n)) {
    for (int i = 0; i < n; ++i) phys_[i] = i;
  }

  int phys(int logical) const { return phys_[logical]; }

  void make_adjacent(int la, int lb) {
    while (std::abs(phys_[la] - phys_[lb]) > 1) {
      const int step = phys_[la] < phys_[lb] ? 1 : -1;
      swap_phys(phys_[la], phys_[la] + step);
    }
  }

  void swap_phys(int pa, int pb) {
    b_.swap_via_cz(pa, pb);
    for (auto& p : phys_) {
      if (p == pa) {
        p = pb;
      } else if (p == pb) {
        p = pa;
      }
    }
  }

  void cphase(int la, int lb, double phi) {
    make_adjacent(la, lb);
    b_.cphase_via_cz(phys_[la], phys_[lb], phi);
  }

 private:
  CircuitBuilder& b_;
  std::vector<int> phys_;
};

}  // namespace

Circuit build_qpe_circuit(int t, double kappa) {
  if (t < 1 || t > 3) throw std::invalid_argument("QPE needs 1 <= t <= 3");
  if (!(kappa >= 0.0 && kappa < 1.0)) throw std::invalid_argument("kappa must lie in [0, 1)");
  const int n = t + 1;
  const int target = t;
  CircuitBuilder b(n);
  LineRouter r(b, n);
  for (int a = 0; a < t; ++a) b.gate(a, "h");
  b.gate(target, "x");
  // Ancilla a controls U^{2^{t-1-a}}; handled nearest-to-target first.
  for (int a = t - 1; a >= 0; --a) {
    const double phi = 2.0 * M_PI * kappa * std::ldexp(1.0, t - 1 - a);
    r.cphase(a, target, phi);
  }
  // Inverse QFT without the final reversal: afterwards ancilla a holds bit
  // t-1-a of the binary fraction, so a = t-1 is the most significant bit.
  for (int a = 0; a < t; ++a) {
    for (int c = 0; c < a; ++c) {
      r.cphase(c, a, -M_PI / std::ldexp(1.0, a - c));
    }
    b.gate(r.phys(a), "h");
  }
  std::vector<int> measured;
  for (int a = t - 1; a >= 0; --a) measured.push_back(r.phys(a));
  measured.push_back(r.phys(target));
  return b.finish(std::move(measured));
}

namespace {

Eigen::Matrix2cd haar_su2(Rng& rng) {
  double v[4];
  double norm = 0;
  do {
    norm = 0;
    for (double& x : v) {
      x = rng.normal();
      norm += x * x;
    }
  } while (norm < 1e-12);
  norm = std::sqrt(norm);
  const std::complex<double> alpha(v[0] / norm, v[1] / norm);
  const std::complex<double> beta(v[2] / norm, v[3] / norm);
  Eigen::Matrix2cd u;
  u << alpha, -std::conj(beta), beta, std::conj(alpha);
  return u;
}

}  // namespace

Circuit build_random_circuit(int n, int m, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("random circuit needs n >= 2");
  if (m < 1) throw std::invalid_argument("random circuit needs m >= 1");
  Rng rng(seed);
  CircuitBuilder b(n);
  for (int j = 0; j < m; ++j) {
    for (int q = 0; q < n; ++q) b.gate(q, haar_su2(rng));
    std::vector<TwoQubitGate> layer;
    for (int q = (j % 2 == 0) ? 1 : 0; q + 1 < n; q += 2) layer.push_back({q, q + 1, GateKind::cz});
    if (layer.empty()) layer.push_back({0, 1, GateKind::cz});
    b.hard(std::move(layer));
  }
  for (int q = 0; q < n; ++q) b.gate(q, haar_su2(rng));
  std::vector<int> measured(static_cast<std::size_t>(n));
  for (int q = 0; q < n; ++q) measured[q] = q;
  return b.finish(std::move(measured));
}

}  // namespace qem
