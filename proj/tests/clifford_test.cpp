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

#include <set>

#include <gtest/gtest.h>

#include "oracle.hpp"
#include "qem/rng.hpp"

namespace qem {
namespace {

HardCycle random_cycle(int n, Rng& rng) {
  std::vector<int> order(static_cast<std::size_t>(n));
  for (int q = 0; q < n; ++q) order[q] = q;
  for (int i = n - 1; i > 0; --i) std::swap(order[i], order[rng.below(static_cast<std::uint64_t>(i + 1))]);
  HardCycle h{n, {}};
  for (int i = 0; i + 1 < n; i += 2) {
    if (rng.bernoulli(0.25)) continue;
    h.gates.push_back({order[i], order[i + 1], rng.bernoulli(0.5) ? GateKind::cz : GateKind::cx});
  }
  return h;
}

oracle::Mat dense(const HardCycle& h) {
  oracle::Mat u = oracle::Mat::Identity(Eigen::Index{1} << h.n, Eigen::Index{1} << h.n);
  for (const auto& g : h.gates) {
    u = (g.kind == GateKind::cz ? oracle::cz(g.q0, g.q1, h.n) : oracle::cx(g.q0, g.q1, h.n)) * u;
  }
  return u;
}

TEST(ConjugateByCycle, SpecExamples) {
  const HardCycle cz{2, {{0, 1, GateKind::cz}}};
  auto [p1, c1] = conjugate_by_cycle(cz, PauliString::parse("XI"));
  EXPECT_EQ(p1, Phase::one());
  EXPECT_EQ(c1.str(), "XZ");
  auto [p2, c2] = conjugate_by_cycle(cz, PauliString::parse("ZI"));
  EXPECT_EQ(p2, Phase::one());
  EXPECT_EQ(c2.str(), "ZI");
  const HardCycle empty{3, {}};
  auto [p3, c3] = conjugate_by_cycle(empty, PauliString::parse("XYZ"));
  EXPECT_EQ(p3, Phase::one());
  EXPECT_EQ(c3.str(), "XYZ");
}

TEST(ConjugateByCycle, DifferentialAgainstDenseConjugation) {
  Rng rng(2024);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(2));
    const HardCycle h = random_cycle(n, rng);
    const std::uint64_t mask = (std::uint64_t{1} << n) - 1;
    const PauliString p(n, rng() & mask, rng() & mask);
    const auto [ph, q] = conjugate_by_cycle(h, p);
    const oracle::Mat u = dense(h);
    const oracle::Mat want = u * oracle::pauli(p.str()) * u.adjoint();
    const oracle::Mat got = ph.value() * oracle::pauli(q.str());
    ASSERT_LT((want - got).cwiseAbs().maxCoeff(), 1e-12) << h.signature() << " " << p.str();
  }
}

TEST(ConjugateByCycle, BijectionAndWeightBound) {
  const HardCycle h{3, {{0, 1, GateKind::cz}}};
  const HardCycle g{3, {{2, 0, GateKind::cx}}};
  for (const HardCycle& cyc : {h, g}) {
    std::set<PauliString> image;
    for (std::uint64_t i = 0; i < 64; ++i) {
      const PauliString p = PauliString::from_index(3, i);
      const auto q = conjugate_by_cycle(cyc, p).second;
      EXPECT_LE(weight(q), 2 * weight(p));
      image.insert(q);
    }
    EXPECT_EQ(image.size(), 64u);
  }
}

TEST(ConjugateByEasyCycle, NamedCliffords) {
  const std::vector<std::string> names = {"i", "x", "y", "z", "h", "s", "sdg", "sx"};
  for (const auto& name : names) {
    EasyCycle e = EasyCycle::identity(1);
    e.gates[0] = EasyGate::named(name);
    for (const char* l : {"X", "Y", "Z"}) {
      const auto [ph, q] = conjugate_by_cycle(e, PauliString::parse(l));
      const oracle::Mat u = e.gates[0].matrix;
      const oracle::Mat want = u * oracle::pauli(l) * u.adjoint();
      EXPECT_LT((want - ph.value() * oracle::pauli(q.str())).cwiseAbs().maxCoeff(), 1e-12) << name << l;
    }
  }
}

TEST(ConjugateByEasyCycle, RejectsNonClifford) {
  EasyCycle e = EasyCycle::identity(1);
  e.gates[0] = EasyGate::named("t");
  EXPECT_THROW(conjugate_by_cycle(e, PauliString::parse("X")), UnsupportedGate);
  e.gates[0] = EasyGate::named("rx", {0.3});
  EXPECT_THROW(conjugate_by_cycle(e, PauliString::parse("Z")), UnsupportedGate);
}

}  // namespace
}  // namespace qem
