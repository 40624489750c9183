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

#include <cmath>

#include <gtest/gtest.h>

#include "oracle.hpp"
#include "qem/gates.hpp"
#include "qem/metrics.hpp"
#include "qem/simulator.hpp"
#include "qem/statevector.hpp"

namespace qem {
namespace {

oracle::Mat ry(double theta) {
  oracle::Mat m(2, 2);
  m << std::cos(theta / 2), -std::sin(theta / 2), std::sin(theta / 2), std::cos(theta / 2);
  return m;
}

oracle::Mat controlled(const oracle::Mat& u, int c, int t, int n) {
  const Eigen::Index d = Eigen::Index{1} << n;
  const oracle::Mat full = oracle::embed1(u, t, n);
  oracle::Mat m = oracle::Mat::Identity(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    if ((i >> c) & 1) m.col(i) = full.col(i);
  }
  return m;
}

oracle::Mat cphase(int a, int b, double phi, int n) {
  const Eigen::Index d = Eigen::Index{1} << n;
  oracle::Mat m = oracle::Mat::Identity(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    if (((i >> a) & 1) && ((i >> b) & 1)) m(i, i) = std::polar(1.0, phi);
  }
  return m;
}

// Textbook W-state preparation: X on qubit 0, then for each k a controlled
// R_Y(2 acos sqrt(1/(n-k+1))) from k-1 onto k followed by cX(k -> k-1).
oracle::Mat w_target(int n) {
  oracle::Mat x(2, 2);
  x << 0, 1, 1, 0;
  oracle::Mat u = oracle::embed1(x, 0, n);
  for (int k = 1; k < n; ++k) {
    const double theta = 2.0 * std::acos(std::sqrt(1.0 / (n - k + 1)));
    u = controlled(ry(theta), k - 1, k, n) * u;
    u = oracle::cx(k, k - 1, n) * u;
  }
  return u;
}

// Textbook QPE on logical qubits (ancillas 0..t-1, target t) followed by the
// permutation that places logical qubits where the builder leaves them.
oracle::Mat qpe_target(int t, double kappa, const std::vector<int>& measured) {
  const int n = t + 1;
  oracle::Mat x(2, 2);
  x << 0, 1, 1, 0;
  oracle::Mat u = oracle::embed1(x, t, n);
  for (int a = 0; a < t; ++a) u = oracle::embed1(oracle::hadamard(), a, n) * u;
  for (int a = 0; a < t; ++a) u = cphase(a, t, 2 * M_PI * kappa * std::ldexp(1.0, t - 1 - a), n) * u;
  for (int a = 0; a < t; ++a) {
    for (int c = 0; c < a; ++c) u = cphase(c, a, -M_PI / std::ldexp(1.0, a - c), n) * u;
    u = oracle::embed1(oracle::hadamard(), a, n) * u;
  }
  std::vector<int> phys(static_cast<std::size_t>(n));
  for (int a = 0; a < t; ++a) phys[a] = measured[t - 1 - a];
  phys[t] = measured[t];
  const Eigen::Index d = Eigen::Index{1} << n;
  oracle::Mat perm = oracle::Mat::Zero(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    Eigen::Index j = 0;
    for (int l = 0; l < n; ++l) j |= ((i >> l) & 1) << phys[l];
    perm(j, i) = 1;
  }
  return perm * u;
}

// Probability of reading p from t-bit phase estimation of e^{2 pi i kappa}.
double qpe_probability(int p, int t, double kappa) {
  const double m = std::ldexp(1.0, t);
  std::complex<double> s = 0;
  for (int k = 0; k < (1 << t); ++k) s += std::polar(1.0, 2 * M_PI * k * (kappa - p / m));
  return std::norm(s / m);
}

TEST(WState, CycleCountsAndDistribution) {
  for (int n = 2; n <= 6; ++n) {
    const Circuit c = build_w_state_circuit(n);
    EXPECT_TRUE(validate(c).empty());
    EXPECT_EQ(c.num_hard(), 3 * (n - 1));
    const auto d = ideal_distribution(c);
    std::vector<double> want(d.size(), 0.0);
    for (int q = 0; q < n; ++q) want[std::size_t{1} << q] = 1.0 / n;
    EXPECT_LT(variation_distance(d, want), 1e-10) << n;
  }
}

TEST(WState, Amplitudes) {
  const auto psi = ideal_state(build_w_state_circuit(2));
  EXPECT_NEAR(std::abs(psi(1)), 1 / std::sqrt(2.0), 1e-10);
  EXPECT_NEAR(std::abs(psi(2)), 1 / std::sqrt(2.0), 1e-10);
  EXPECT_NEAR(to_distribution(ideal_distribution(build_w_state_circuit(2)), 2).at("01"), 0.5, 1e-12);
}

TEST(WState, MatchesTextbookUnitary) {
  for (int n = 2; n <= 4; ++n) {
    EXPECT_LT(distance_up_to_phase(circuit_unitary(build_w_state_circuit(n)), w_target(n)), 1e-8) << n;
  }
}

TEST(Qpe, MatchesTextbookUnitary) {
  for (int t = 1; t <= 3; ++t) {
    for (double kappa : {0.0, 0.25, 0.3, 0.71}) {
      const Circuit c = build_qpe_circuit(t, kappa);
      EXPECT_TRUE(validate(c).empty());
      EXPECT_LT(distance_up_to_phase(circuit_unitary(c), qpe_target(t, kappa, c.measured)), 1e-8)
          << t << " " << kappa;
    }
  }
}

TEST(Qpe, HardCycleCounts) {
  EXPECT_EQ(build_qpe_circuit(1, 0.5).num_hard(), 2);
  EXPECT_EQ(build_qpe_circuit(2, 0.25).num_hard(), 9);
  EXPECT_EQ(build_qpe_circuit(3, 0.25).num_hard(), 27);
}

TEST(Qpe, DecodedDistributions) {
  const auto d25 = qpe_decode(ideal_distribution(build_qpe_circuit(2, 0.25)), 2);
  EXPECT_NEAR(d25[1], 1.0, 1e-10);
  const auto d50 = qpe_decode(ideal_distribution(build_qpe_circuit(2, 0.5)), 2);
  EXPECT_NEAR(d50[2], 1.0, 1e-10);
  const auto d30 = qpe_decode(ideal_distribution(build_qpe_circuit(2, 0.3)), 2);
  const auto best = std::max_element(d30.begin(), d30.end()) - d30.begin();
  EXPECT_EQ(best, 1);
  EXPECT_GT(d30[1], 0.0);
  EXPECT_LT(d30[1], 1.0);
}

TEST(Qpe, AgreesWithAnalyticPhaseEstimation) {
  for (int t = 1; t <= 3; ++t) {
    for (double kappa : {0.1, 0.3, 0.55, 0.875}) {
      const auto d = qpe_decode(ideal_distribution(build_qpe_circuit(t, kappa)), t);
      for (int p = 0; p < (1 << t); ++p) EXPECT_NEAR(d[p], qpe_probability(p, t, kappa), 1e-10);
    }
  }
}

TEST(Qpe, TargetStaysInOne) {
  const Circuit c = build_qpe_circuit(2, 0.3);
  const auto d = ideal_distribution(c);
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (!((i >> 2) & 1)) EXPECT_NEAR(d[i], 0.0, 1e-12);
  }
}

TEST(RandomCircuit, Structure) {
  const Circuit a = build_random_circuit(4, 2, 7);
  const Circuit b = build_random_circuit(4, 2, 7);
  EXPECT_LT((circuit_unitary(a) - circuit_unitary(b)).norm(), 1e-15);
  const Circuit one = build_random_circuit(4, 1, 99);
  EXPECT_EQ(one.num_hard(), 1);
  EXPECT_EQ(one.cycles.size(), 3u);
  const auto d = ideal_distribution(build_random_circuit(4, 3, 1));
  double s = 0;
  for (double x : d) s += x;
  EXPECT_NEAR(s, 1.0, 1e-10);
  const Circuit two = build_random_circuit(2, 2, 3);
  EXPECT_EQ(two.hard(0).gates.size(), 1u);
  EXPECT_EQ(two.hard(0).gates[0].q0, 0);
  EXPECT_TRUE(validate(two).empty());
}

}  // namespace
}  // namespace qem
