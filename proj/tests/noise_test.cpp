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

#include "qem/noise.hpp"

#include <cmath>
#include <stdexcept>

#include <gtest/gtest.h>

#include "oracle.hpp"
#include "qem/builders.hpp"
#include "qem/superop.hpp"

namespace qem {
namespace {

PauliChannel from_vector(int n, const std::vector<double>& r) {
  std::map<PauliString, double> rates;
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (r[i] > 0) rates[PauliString::from_index(n, i)] = r[i];
  }
  return PauliChannel::from_rates(n, rates);
}

std::vector<double> to_vector(const PauliChannel& ch) {
  std::vector<double> r(std::size_t{1} << (2 * ch.num_qubits()), 0.0);
  for (const auto& [p, e] : ch.rates()) r[p.index()] = e;
  return r;
}

TEST(PauliChannel, FromRatesInfersIdentity) {
  const auto ch = PauliChannel::from_rates(1, {{PauliString::parse("X"), 0.1}});
  EXPECT_NEAR(ch.identity_rate(), 0.9, 1e-15);
  EXPECT_NEAR(ch.rate(PauliString::parse("Z")), 0.0, 0);
  EXPECT_THROW(PauliChannel::from_rates(1, {{PauliString::parse("X"), 1.2}}), std::invalid_argument);
  EXPECT_THROW(PauliChannel::from_rates(1, {{PauliString::parse("I"), 0.5}, {PauliString::parse("X"), 0.4}}),
               std::invalid_argument);
  EXPECT_TRUE(PauliChannel(2).is_noiseless());
}

TEST(PauliChannel, PointMassAlwaysIdentity) {
  const PauliChannel ch(2);
  Rng rng(1);
  for (int i = 0; i < 1000; ++i) EXPECT_TRUE(ch.sample(rng).is_identity());
}

TEST(PauliChannel, SamplingFrequency) {
  const auto ch = PauliChannel::from_rates(2, {{PauliString::parse("II"), 0.9}, {PauliString::parse("XI"), 0.1}});
  Rng rng(77);
  int hits = 0;
  const int draws = 100000;
  for (int i = 0; i < draws; ++i) hits += sample_error(ch, rng) == PauliString::parse("XI");
  EXPECT_NEAR(hits / double(draws), 0.1, 0.005);
}

TEST(PauliChannel, EqualSeedsEqualStreams) {
  const auto ch = PauliChannel::from_rates(
      2, {{PauliString::parse("XI"), 0.2}, {PauliString::parse("ZZ"), 0.3}, {PauliString::parse("YX"), 0.1}});
  Rng a(9), b(9);
  for (int i = 0; i < 500; ++i) EXPECT_EQ(ch.sample(a), ch.sample(b));
}

TEST(ChannelPower, SpecExamples) {
  const auto x = PauliChannel::from_rates(1, {{PauliString::parse("X"), 0.1}});
  EXPECT_EQ(channel_power(x, 1), x);
  const auto x2 = channel_power(x, 2);
  EXPECT_NEAR(x2.identity_rate(), 0.82, 1e-15);
  EXPECT_NEAR(x2.rate(PauliString::parse("X")), 0.18, 1e-15);
  const auto xz = PauliChannel::from_rates(1, {{PauliString::parse("X"), 0.05}, {PauliString::parse("Z"), 0.05}});
  const auto xz2 = channel_power(xz, 2);
  EXPECT_NEAR(xz2.identity_rate(), 0.815, 1e-15);
  EXPECT_NEAR(xz2.rate(PauliString::parse("X")), 0.09, 1e-15);
  EXPECT_NEAR(xz2.rate(PauliString::parse("Z")), 0.09, 1e-15);
  EXPECT_NEAR(xz2.rate(PauliString::parse("Y")), 0.005, 1e-15);
  EXPECT_THROW(channel_power(x, 0), std::invalid_argument);
}

TEST(ChannelPower, MatchesEnumeration) {
  Rng rng(4);
  for (int n = 1; n <= 2; ++n) {
    for (int trial = 0; trial < 10; ++trial) {
      const auto r = oracle::random_rates(n, rng, 0.7, 5);
      const auto ch = from_vector(n, r);
      for (int alpha = 1; alpha <= 3; ++alpha) {
        const auto want = oracle::power_by_enumeration(r, n, alpha);
        const auto got = to_vector(channel_power(ch, alpha));
        for (std::size_t i = 0; i < want.size(); ++i) EXPECT_NEAR(got[i], want[i], 1e-12);
      }
    }
  }
}

TEST(ChannelPower, Associativity) {
  Rng rng(8);
  for (int n = 1; n <= 2; ++n) {
    for (int trial = 0; trial < 10; ++trial) {
      const auto ch = from_vector(n, oracle::random_rates(n, rng, 0.5, 6));
      for (int a = 1; a <= 3; ++a) {
        for (int b = 1; b <= 3; ++b) {
          const auto lhs = to_vector(channel_power(ch, a + b));
          const auto rhs = to_vector(convolve(channel_power(ch, a), channel_power(ch, b)));
          for (std::size_t i = 0; i < lhs.size(); ++i) EXPECT_NEAR(lhs[i], rhs[i], 1e-12);
        }
      }
    }
  }
}

TEST(ChannelPower, IdentityRateLowerBound) {
  Rng rng(12);
  for (int trial = 0; trial < 50; ++trial) {
    const auto ch = from_vector(2, oracle::random_rates(2, rng, 0.6, 4));
    for (int alpha = 1; alpha <= 4; ++alpha) {
      EXPECT_GE(channel_power(ch, alpha).identity_rate(), std::pow(ch.identity_rate(), alpha) - 1e-15);
    }
  }
}

TEST(Convolve, MatchesSuperoperatorProduct) {
  Rng rng(21);
  for (int trial = 0; trial < 10; ++trial) {
    const auto a = from_vector(2, oracle::random_rates(2, rng, 0.5, 5));
    const auto b = from_vector(2, oracle::random_rates(2, rng, 0.5, 5));
    const Eigen::MatrixXcd want = superop_pauli_channel(b) * superop_pauli_channel(a);
    EXPECT_LT((superop_pauli_channel(convolve(a, b)) - want).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(PauliFidelity, MatchesTraceDefinition) {
  // f_b = Tr(P_b D(P_b)) / 2^n
  Rng rng(31);
  const auto ch = from_vector(2, oracle::random_rates(2, rng, 0.5, 7));
  for (std::uint64_t i = 0; i < 16; ++i) {
    const PauliString b = PauliString::from_index(2, i);
    const oracle::Mat pb = oracle::pauli(b.str());
    oracle::Mat out = oracle::Mat::Zero(4, 4);
    for (const auto& [p, e] : ch.rates()) {
      const oracle::Mat pp = oracle::pauli(p.str());
      out += e * pp * pb * pp.adjoint();
    }
    EXPECT_NEAR(pauli_fidelity(ch, b), (pb * out).trace().real() / 4.0, 1e-14);
  }
}

TEST(NoiseModel, LookupBySignature) {
  const Circuit c = build_w_state_circuit(3);
  NoiseModel m = NoiseModel::noiseless_for(c);
  EXPECT_EQ(m.entries().size(), distinct_hard_cycles(c).size());
  const HardCycle other{3, {{1, 0, GateKind::cz}}};
  EXPECT_NE(m.find(other), nullptr);
  EXPECT_THROW(m.at(HardCycle{3, {{0, 2, GateKind::cz}}}), UncoveredCycle);
}

TEST(SyntheticNoise, TotalErrorAndIdleDominance) {
  const HardCycle h{4, {{0, 1, GateKind::cz}}};
  const auto ch = synthetic_cycle_channel(h, 0.02);
  EXPECT_NEAR(1.0 - ch.identity_rate(), 0.02, 1e-14);
  double idle_z = 0.0;
  for (const auto& [p, e] : ch.rates()) {
    if (!p.is_identity() && (p.support() & h.active_mask()) == 0) idle_z += e;
  }
  EXPECT_NEAR(idle_z, 0.6 * 0.02, 1e-14);
  const auto full = synthetic_cycle_channel(HardCycle{2, {{0, 1, GateKind::cz}}}, 0.02);
  EXPECT_NEAR(1.0 - full.identity_rate(), 0.02, 1e-14);
  EXPECT_GT(full.rate(PauliString::parse("ZI")), 0.0);
  EXPECT_GT(full.rate(PauliString::parse("ZZ")), 0.0);
}

}  // namespace
}  // namespace qem
