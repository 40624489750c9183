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

#include <cmath>

#include <gtest/gtest.h>

#include "oracle.hpp"
#include "qem/builders.hpp"
#include "qem/gates.hpp"
#include "qem/statevector.hpp"
#include "qem/superop.hpp"

namespace qem {
namespace {

TEST(RandomizedCompile, IdentityTwirlsAreNoOp) {
  const Circuit c = build_w_state_circuit(3);
  const std::vector<PauliString> twirls(static_cast<std::size_t>(c.num_hard()), PauliString(3));
  const Circuit rc = randomized_compile(c, twirls);
  ASSERT_EQ(rc.cycles.size(), c.cycles.size());
  for (int j = 0; j <= c.num_hard(); ++j) {
    for (int q = 0; q < 3; ++q) {
      EXPECT_EQ(rc.easy(j).gates[q].name, c.easy(j).gates[q].name);
      EXPECT_EQ(rc.easy(j).gates[q].matrix, c.easy(j).gates[q].matrix);
    }
  }
}

TEST(RandomizedCompile, PreservesLogicalUnitary) {
  Rng rng(17);
  for (const Circuit& c : {build_w_state_circuit(2), build_qpe_circuit(2, 0.3), build_random_circuit(3, 4, 5)}) {
    const auto u = circuit_unitary(c);
    for (int trial = 0; trial < 20; ++trial) {
      const Circuit rc = randomized_compile(c, rng);
      EXPECT_EQ(rc.num_hard(), c.num_hard());
      EXPECT_EQ(rc.measured, c.measured);
      EXPECT_TRUE(validate(rc).empty());
      EXPECT_LT(distance_up_to_phase(circuit_unitary(rc), u), 1e-8);
    }
  }
}

TEST(EffectivePauliChannel, PauliChannelIsFixedPoint) {
  const HardCycle h{2, {{0, 1, GateKind::cz}}};
  const auto ch = PauliChannel::from_rates(2, {{PauliString::parse("XI"), 0.01}, {PauliString::parse("ZZ"), 0.02}});
  EXPECT_EQ(effective_pauli_channel(h, ch), ch);
}

TEST(EffectivePauliChannel, ZRotation) {
  const double theta = 0.1;
  const HardCycle h{1, {}};
  const CoherentNoise rz{{0}, gate_matrix("rz", std::vector<double>{theta})};
  const auto ch = effective_pauli_channel(h, rz);
  EXPECT_NEAR(ch.identity_rate(), std::pow(std::cos(theta / 2), 2), 1e-14);
  EXPECT_NEAR(ch.rate(PauliString::parse("Z")), std::pow(std::sin(theta / 2), 2), 1e-14);
  EXPECT_NEAR(ch.rate(PauliString::parse("X")), 0.0, 1e-15);
  const CoherentNoise id{{0}, Eigen::Matrix2cd::Identity()};
  EXPECT_TRUE(effective_pauli_channel(h, id).is_noiseless());
}

TEST(EffectivePauliChannel, MatchesExhaustiveTwirlAverage) {
  // Average of T^dag V T rho T^dag V^dag T over all 16 two-qubit Paulis.
  const HardCycle h{2, {{0, 1, GateKind::cz}}};
  const Eigen::Matrix2cd u = gate_matrix("u3", std::vector<double>{0.2, 0.4, -0.3});
  const CoherentNoise noise{{1}, u};
  const Eigen::MatrixXcd v = embed_unitary(2, noise);
  Eigen::MatrixXcd avg = Eigen::MatrixXcd::Zero(16, 16);
  for (std::uint64_t t = 0; t < 16; ++t) {
    const oracle::Mat pt = oracle::pauli(PauliString::from_index(2, t).str());
    avg += superop_unitary(Eigen::MatrixXcd(pt.adjoint() * v * pt)) / 16.0;
  }
  const Eigen::MatrixXcd want = superop_pauli_channel(effective_pauli_channel(h, noise));
  EXPECT_LT((avg - want).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Superop, VecRoundTripAndAction) {
  Rng rng(2);
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Random(4, 4);
  const Eigen::MatrixXcd u = circuit_unitary(build_random_circuit(2, 1, 3));
  const Eigen::MatrixXcd out = unvec(superop_unitary(u) * vec(rho));
  EXPECT_LT((out - u * rho * u.adjoint()).cwiseAbs().maxCoeff(), 1e-13);
  EXPECT_LT((unvec(vec(rho)) - rho).cwiseAbs().maxCoeff(), 0.0 + 1e-15);
}

TEST(Superop, ChiOfPauliChannelIsDiagonal) {
  const auto ch = PauliChannel::from_rates(1, {{PauliString::parse("X"), 0.1}, {PauliString::parse("Z"), 0.05}});
  const Eigen::MatrixXcd chi = chi_from_superop(superop_pauli_channel(ch), 1);
  for (Eigen::Index a = 0; a < 4; ++a) {
    for (Eigen::Index b = 0; b < 4; ++b) {
      const double want = a == b ? ch.rate(PauliString::from_index(1, static_cast<std::uint64_t>(a))) : 0.0;
      EXPECT_NEAR(std::abs(chi(a, b) - want), 0.0, 1e-14);
    }
  }
  const Eigen::Matrix2cd rz = gate_matrix("rz", std::vector<double>{0.3});
  EXPECT_LT((chi_from_unitary(rz, 1) - chi_from_superop(superop_unitary(rz), 1)).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Superop, TelescopingIdentity) {
  // D_m U_m ... D_1 U_1 = U_m...U_1 + sum_j (U_m..U_{j+1}) delta_j U_j (D_{j-1} U_{j-1} ... D_1 U_1)
  Rng rng(99);
  const int n = 2, m = 3;
  const Eigen::Index d = 16;
  std::vector<Eigen::MatrixXcd> u, dm;
  for (int j = 0; j < m; ++j) {
    u.push_back(superop_unitary(circuit_unitary(build_random_circuit(n, 1, rng()))));
    std::map<PauliString, double> rates;
    const auto r = oracle::random_rates(n, rng, 0.8, 6);
    for (std::size_t i = 1; i < r.size(); ++i) {
      if (r[i] > 0) rates[PauliString::from_index(n, i)] = r[i];
    }
    dm.push_back(superop_pauli_channel(PauliChannel::from_rates(n, rates)));
  }
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(d, d);
  Eigen::MatrixXcd noisy = id, ideal = id;
  for (int j = 0; j < m; ++j) {
    noisy = dm[j] * u[j] * noisy;
    ideal = u[j] * ideal;
  }
  Eigen::MatrixXcd rhs = ideal;
  for (int j = 0; j < m; ++j) {
    Eigen::MatrixXcd prefix = id;
    for (int k = 0; k < j; ++k) prefix = dm[k] * u[k] * prefix;
    Eigen::MatrixXcd suffix = id;
    for (int k = j + 1; k < m; ++k) suffix = u[k] * suffix;
    rhs += suffix * (dm[j] - id) * u[j] * prefix;
  }
  EXPECT_LT((noisy - rhs).cwiseAbs().maxCoeff(), 1e-10);
}

}  // namespace
}  // namespace qem
