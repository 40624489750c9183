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

#include "qem/rem.hpp"

#include <cmath>
#include <stdexcept>

#include <gtest/gtest.h>

#include "qem/builders.hpp"
#include "qem/metrics.hpp"
#include "qem/simulator.hpp"

namespace qem {
namespace {

TrajectoryBackend readout_backend(int n, std::vector<double> p10, std::vector<double> p01) {
  CircuitBuilder b(n);
  b.hard({});
  NoiseModel m = NoiseModel::noiseless_for(b.finish({}));
  m.readout = ReadoutError{std::move(p10), std::move(p01)};
  return TrajectoryBackend(m);
}

TEST(RcalMeasure, NoReadoutNoiseGivesIdentity) {
  const auto backend = readout_backend(2, {0, 0}, {0, 0});
  const auto cm = rcal_measure(backend, 2, 1000, 1);
  for (const auto& m : cm.per_qubit) EXPECT_LT((m - Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(RcalMeasure, RecoversInjectedFlips) {
  const std::uint64_t shots = 100000;
  const auto backend = readout_backend(3, {0.005, 0.005, 0.01}, {0.02, 0.03, 0.02});
  const auto cm = rcal_measure(backend, 3, shots, 9, 2);
  const std::vector<double> p10 = {0.005, 0.005, 0.01}, p01 = {0.02, 0.03, 0.02};
  for (int q = 0; q < 3; ++q) {
    const double s10 = std::sqrt(p10[q] * (1 - p10[q]) / shots), s01 = std::sqrt(p01[q] * (1 - p01[q]) / shots);
    EXPECT_NEAR(cm.per_qubit[q](1, 0), p10[q], 5 * s10);
    EXPECT_NEAR(cm.per_qubit[q](0, 1), p01[q], 5 * s01);
    EXPECT_NEAR(cm.per_qubit[q].col(0).sum(), 1.0, 1e-15);
  }
  EXPECT_GT(cm.per_qubit[1](0, 1), cm.per_qubit[0](0, 1));
  EXPECT_THROW(rcal_measure(backend, 3, 0, 1), std::invalid_argument);
}

TEST(RemApply, IdentityConfusionIsNoOp) {
  ShotRecord r;
  r.counts = {{"00", 30}, {"01", 50}, {"11", 20}};
  r.total_shots = 100;
  const auto d = rem_apply(r, ConfusionMatrix::identity(2));
  EXPECT_NEAR(d[0], 0.3, 1e-15);
  EXPECT_NEAR(d[2], 0.5, 1e-15);
  EXPECT_NEAR(d[3], 0.2, 1e-15);
}

TEST(RemApply, SingleQubitInversion) {
  ShotRecord r;
  r.counts = {{"1", 980}, {"0", 20}};
  r.total_shots = 1000;
  const auto cm = ConfusionMatrix::from_flips({0.0}, {0.02});
  const auto d = rem_apply(r, cm);
  EXPECT_NEAR(d[1], 1.0, 1e-12);
  EXPECT_NEAR(d[0], 0.0, 1e-12);
}

TEST(RemApply, RejectsWeakDiagonal) {
  const auto cm = ConfusionMatrix::from_flips({0.6}, {0.0});
  EXPECT_THROW(rem_invert({0.5, 0.5}, cm), std::invalid_argument);
}

TEST(RemInvert, InvertsApplyConfusion) {
  Rng rng(4);
  const auto cm = ConfusionMatrix::from_flips({0.01, 0.03}, {0.02, 0.05});
  std::vector<double> p(4);
  double s = 0;
  for (auto& x : p) s += (x = rng.uniform());
  for (auto& x : p) x /= s;
  const auto back = rem_invert(apply_confusion(p, cm), cm);
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(back[i], p[i], 1e-14);
  const auto se = rem_invert_stderr({0.01, 0.01, 0.01, 0.01}, cm);
  for (double x : se) EXPECT_GT(x, 0.01 * 0.9);
}

TEST(RemApply, ReducesDistanceInMostCases) {
  Rng rng(61);
  const auto cm = ConfusionMatrix::from_flips({0.005, 0.005}, {0.02, 0.02});
  int better = 0;
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> p(4);
    double s = 0;
    for (auto& x : p) s += (x = rng.uniform() * rng.uniform());
    for (auto& x : p) x /= s;
    const auto noisy = apply_confusion(p, cm);
    ShotRecord r;
    const std::uint64_t shots = 100000;
    for (std::uint64_t i = 0; i < shots; ++i) {
      double u = rng.uniform();
      std::uint64_t o = 0;
      while (o < 3 && u >= noisy[o]) u -= noisy[o++];
      ++r.counts[bitstring(o, 2)];
    }
    r.total_shots = shots;
    const auto raw = frequencies(r, 2);
    better += variation_distance(rem_apply(r, cm), p) < variation_distance(raw, p);
  }
  EXPECT_GE(better, 18);
}

TEST(ConfusionMatrix, RestrictTo) {
  const auto cm = ConfusionMatrix::from_flips({0.1, 0.2, 0.3}, {0.0, 0.0, 0.0});
  const auto sub = cm.restrict_to({2, 0});
  ASSERT_EQ(sub.per_qubit.size(), 2u);
  EXPECT_NEAR(sub.per_qubit[0](1, 0), 0.3, 1e-15);
  EXPECT_NEAR(sub.per_qubit[1](1, 0), 0.1, 1e-15);
}

}  // namespace
}  // namespace qem
