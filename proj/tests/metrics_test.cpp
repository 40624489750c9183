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

#include "qem/metrics.hpp"

#include <stdexcept>

#include <gtest/gtest.h>

#include "qem/circuit.hpp"
#include "qem/rng.hpp"

namespace qem {
namespace {

std::vector<double> random_distribution(std::size_t k, Rng& rng) {
  std::vector<double> p(k);
  double s = 0;
  for (auto& x : p) s += (x = rng.uniform());
  for (auto& x : p) x /= s;
  return p;
}

TEST(VariationDistance, SpecExamples) {
  const Distribution p = {{"0", 0.6}, {"1", 0.4}};
  const Distribution q = {{"0", 0.5}, {"1", 0.5}};
  EXPECT_NEAR(variation_distance(p, p), 0.0, 1e-15);
  EXPECT_NEAR(variation_distance(p, q), 0.1, 1e-15);
  EXPECT_NEAR(variation_distance(Distribution{{"00", 1.0}}, Distribution{{"11", 1.0}}), 1.0, 1e-15);
  EXPECT_THROW(variation_distance(Distribution{{"0", 0.7}}, q), std::invalid_argument);
  EXPECT_THROW(variation_distance(std::vector<double>{1.2, -0.2}, std::vector<double>{0.5, 0.5}),
               std::invalid_argument);
}

TEST(VariationDistance, IsAMetric) {
  Rng rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const auto a = random_distribution(8, rng), b = random_distribution(8, rng), c = random_distribution(8, rng);
    EXPECT_NEAR(variation_distance(a, b), variation_distance(b, a), 1e-12);
    EXPECT_LE(variation_distance(a, c), variation_distance(a, b) + variation_distance(b, c) + 1e-12);
  }
}

TEST(Improvement, Arithmetic) {
  EXPECT_NEAR(improvement(0.05, 0.10), 0.5, 1e-15);
  EXPECT_NEAR(improvement(0.10, 0.10), 0.0, 1e-15);
  EXPECT_NEAR(improvement(0.014, 0.10), 0.86, 1e-15);
  EXPECT_NEAR(improvement(0.0, 0.3), 1.0, 1e-15);
  EXPECT_THROW(improvement(0.1, 0.0), std::invalid_argument);
}

TEST(ClipAndRenormalize, ReportsDelta) {
  const auto c = clip_and_renormalize({0.6, -0.1, 0.5});
  EXPECT_NEAR(c.probs[0], 0.6 / 1.1, 1e-15);
  EXPECT_EQ(c.probs[1], 0.0);
  EXPECT_NEAR(c.clip_delta, 0.1, 1e-15);
  const auto z = clip_and_renormalize({-1.0, 0.0});
  EXPECT_NEAR(z.probs[0], 0.5, 1e-15);
}

TEST(QpeDecode, MarginalizesTarget) {
  // outcome bits: ancilla MSB first, then the target
  std::vector<double> d(8, 0.0);
  d[parse_bitstring("011")] = 0.7;
  d[parse_bitstring("010")] = 0.1;
  d[parse_bitstring("101")] = 0.2;
  const auto q = qpe_decode(d, 2);
  EXPECT_NEAR(q[1], 0.8, 1e-15);
  EXPECT_NEAR(q[2], 0.2, 1e-15);
  const std::vector<double> uniform(8, 0.125);
  for (double x : qpe_decode(uniform, 2)) EXPECT_NEAR(x, 0.25, 1e-15);
  const auto m = qpe_decode(to_distribution(d, 3), 2);
  EXPECT_NEAR(m.at("0.25"), 0.8, 1e-15);
  EXPECT_NEAR(m.at("0.5"), 0.2, 1e-15);
}

TEST(QpeDecode, PreservesTotalProbability) {
  Rng rng(9);
  for (int t = 1; t <= 3; ++t) {
    const auto d = random_distribution(std::size_t{1} << (t + 1), rng);
    double s = 0;
    for (double x : qpe_decode(d, t)) s += x;
    EXPECT_NEAR(s, 1.0, 1e-10);
  }
}

TEST(KappaLabel, ShortestText) {
  EXPECT_EQ(kappa_label(0, 2), "0");
  EXPECT_EQ(kappa_label(1, 2), "0.25");
  EXPECT_EQ(kappa_label(3, 3), "0.375");
}

TEST(Distribution, VectorRoundTrip) {
  const std::vector<double> v = {0.1, 0.2, 0.3, 0.4};
  EXPECT_EQ(to_vector(to_distribution(v, 2), 2), v);
  EXPECT_NEAR(to_distribution(v, 2).at("10"), 0.2, 0);
}

}  // namespace
}  // namespace qem
