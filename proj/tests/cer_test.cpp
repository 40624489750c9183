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

#include "qem/cer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <gtest/gtest.h>

#include "oracle.hpp"

namespace qem {
namespace {

const HardCycle kCz{2, {{0, 1, GateKind::cz}}};

NoiseModel model_with(const HardCycle& h, const PauliChannel& ch) {
  NoiseModel m(h.n);
  m.set(h, ch);
  return m;
}

PauliChannel sparse_channel(int n, Rng& rng, int count, double lo, double hi, int max_weight) {
  const auto pool = paulis_up_to_weight(n, max_weight);
  std::map<PauliString, double> rates;
  while (static_cast<int>(rates.size()) < count) {
    const PauliString p = pool[1 + rng.below(pool.size() - 1)];
    rates[p] = lo + (hi - lo) * rng.uniform();
  }
  return PauliChannel::from_rates(n, rates);
}

double fidelity_oracle(const PauliChannel& ch, const PauliString& b) {
  // Tr(P_b D(P_b)) / 2^n with dense matrices.
  const oracle::Mat pb = oracle::pauli(b.str());
  oracle::Mat out = oracle::Mat::Zero(pb.rows(), pb.cols());
  for (const auto& [p, e] : ch.rates()) {
    const oracle::Mat pp = oracle::pauli(p.str());
    out += e * pp * pb * pp;
  }
  return (pb * out).trace().real() / static_cast<double>(pb.rows());
}

TEST(PaulisUpToWeight, Counts) {
  EXPECT_EQ(paulis_up_to_weight(2, 2).size(), 16u);
  EXPECT_EQ(paulis_up_to_weight(4, 1).size(), 13u);
  EXPECT_EQ(paulis_up_to_weight(4, 2).size(), 1u + 12u + 54u);
  EXPECT_TRUE(paulis_up_to_weight(3, 2).front().is_identity());
}

TEST(BenchmarkCycle, NoiselessFidelitiesAreOne) {
  BenchmarkOptions opts;
  opts.shots_per_point = 500;
  opts.seed = 3;
  for (const auto& c : benchmark_cycle(kCz, model_with(kCz, PauliChannel(2)), opts)) {
    EXPECT_NEAR(c.fitted, 1.0, std::max(2 * c.fit_stderr, 1e-12)) << c.pauli.str();
  }
}

TEST(BenchmarkCycle, InjectedChannelFidelity) {
  const auto ch = PauliChannel::from_rates(2, {{PauliString::parse("XI"), 0.03}, {PauliString::parse("IZ"), 0.03}});
  EXPECT_NEAR(fidelity_oracle(ch, PauliString::parse("ZI")), 0.94, 1e-15);
  BenchmarkOptions opts;
  opts.shots_per_point = 10000;
  opts.seed = 11;
  const auto curves = benchmark_cycle(kCz, model_with(kCz, ch), opts);
  for (const auto& c : curves) {
    const double truth = fidelity_oracle(ch, c.pauli);
    EXPECT_NEAR(c.fitted, truth, 3 * c.fit_stderr + 1e-12) << c.pauli.str();
    EXPECT_GE(c.fitted, -1.0);
    EXPECT_LE(c.fitted, 1.0 + 3 * c.fit_stderr + 1e-12);
  }
}

TEST(BenchmarkCycle, Reproducible) {
  const auto ch = PauliChannel::from_rates(2, {{PauliString::parse("ZI"), 0.02}});
  BenchmarkOptions opts;
  opts.shots_per_point = 2000;
  opts.seed = 5;
  const auto a = benchmark_cycle(kCz, model_with(kCz, ch), opts);
  opts.jobs = 3;
  const auto b = benchmark_cycle(kCz, model_with(kCz, ch), opts);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].fidelity_estimates, b[i].fidelity_estimates);
    EXPECT_EQ(a[i].fitted, b[i].fitted);
  }
}

TEST(BenchmarkCycle, RejectsBadOptions) {
  BenchmarkOptions opts;
  opts.depths = {1, 4};
  EXPECT_THROW(benchmark_cycle(kCz, model_with(kCz, PauliChannel(2)), opts), std::invalid_argument);
  opts.depths = {2, 4};
  opts.shots_per_point = 0;
  EXPECT_THROW(benchmark_cycle(kCz, model_with(kCz, PauliChannel(2)), opts), std::invalid_argument);
}

TEST(ReconstructRates, ConstantFidelities) {
  const auto report = reconstruct_rates(analytic_curves(PauliChannel(2)), 2, 2);
  EXPECT_NEAR(report.rates.at(PauliString(2)).est, 1.0, 1e-15);
  for (const auto& [p, r] : report.rates) {
    if (!p.is_identity()) EXPECT_NEAR(r.est, 0.0, 1e-15);
  }
}

TEST(ReconstructRates, SingleQubitHandExample) {
  std::vector<DecayCurve> curves;
  for (const auto& [label, f] : std::vector<std::pair<const char*, double>>{{"I", 1.0}, {"X", 0.9}, {"Y", 0.9}, {"Z", 1.0}}) {
    DecayCurve c;
    c.pauli = PauliString::parse(label);
    c.fitted = f;
    curves.push_back(c);
  }
  const auto r = reconstruct_rates(curves, 1, 1);
  EXPECT_NEAR(r.rates.at(PauliString::parse("I")).est, 0.95, 1e-15);
  EXPECT_NEAR(r.rates.at(PauliString::parse("Z")).est, 0.05, 1e-15);
  EXPECT_NEAR(r.rates.at(PauliString::parse("X")).est, 0.0, 1e-15);
  EXPECT_NEAR(r.rates.at(PauliString::parse("Y")).est, 0.0, 1e-15);
  EXPECT_NEAR(r.residual_mass, 0.0, 1e-15);
}

TEST(ReconstructRates, AnalyticRoundTripExhaustive) {
  Rng rng(42);
  for (int n = 1; n <= 3; ++n) {
    for (int trial = 0; trial < 10; ++trial) {
      const auto ch = sparse_channel(n, rng, std::min(6, (1 << (2 * n)) - 1), 1e-3, 0.02, n);
      const auto r = reconstruct_rates(analytic_curves(ch), n, n);
      for (const auto& [p, e] : r.rates) EXPECT_NEAR(e.est, ch.rate(p), 1e-12) << p.str();
      EXPECT_NEAR(r.residual_mass, 0.0, 1e-12);
    }
  }
}

TEST(ReconstructRates, AnalyticRoundTripTruncated) {
  Rng rng(43);
  for (int trial = 0; trial < 10; ++trial) {
    const auto ch = sparse_channel(4, rng, 6, 1e-3, 0.02, 2);
    const auto r = reconstruct_rates(analytic_curves(ch, 2), 2, 4);
    EXPECT_EQ(r.rates.size(), paulis_up_to_weight(4, 2).size());
    for (const auto& [p, e] : r.rates) EXPECT_NEAR(e.est, ch.rate(p), 1e-12) << p.str();
  }
}

TEST(ReconstructRates, InsufficientCurvesThrow) {
  auto curves = analytic_curves(PauliChannel(3), 1);
  EXPECT_THROW(reconstruct_rates(curves, 2, 3), std::invalid_argument);
  EXPECT_THROW(reconstruct_rates(curves, 4, 3), std::invalid_argument);
}

TEST(ReconstructRates, SampledRoundTripAndResidual) {
  const auto ch = PauliChannel::from_rates(
      2, {{PauliString::parse("ZI"), 0.004}, {PauliString::parse("IZ"), 0.003}, {PauliString::parse("XX"), 0.002}});
  BenchmarkOptions opts;
  opts.shots_per_point = 10000;
  opts.seed = 19;
  const auto r = reconstruct_rates(benchmark_cycle(kCz, model_with(kCz, ch), opts), 2, 2);
  double sum = 0.0;
  for (const auto& [p, e] : r.rates) {
    sum += e.est;
    EXPECT_GE(e.est, -4 * e.stderr) << p.str();
    EXPECT_NEAR(e.est, ch.rate(p), 5 * e.stderr) << p.str();
  }
  EXPECT_NEAR(sum + r.residual_mass, 1.0, 1e-12);
  EXPECT_GT(r.beta, 0.0);
}

TEST(ReconstructRates, MoreShotsImproveAccuracyAndBeta) {
  Rng rng(77);
  std::vector<double> err_lo, err_hi;
  double beta_lo = 0, beta_hi = 0;
  for (int trial = 0; trial < 6; ++trial) {
    const auto ch = sparse_channel(2, rng, 4, 2e-3, 8e-3, 2);
    for (std::uint64_t shots : {1000u, 4000u}) {
      BenchmarkOptions opts;
      opts.shots_per_point = shots;
      opts.seed = rng();
      const auto r = reconstruct_rates(benchmark_cycle(kCz, model_with(kCz, ch), opts), 2, 2);
      for (const auto& [p, e] : r.rates) (shots == 1000 ? err_lo : err_hi).push_back(std::abs(e.est - ch.rate(p)));
      (shots == 1000 ? beta_lo : beta_hi) += r.beta;
    }
  }
  auto median = [](std::vector<double> v) {
    std::nth_element(v.begin(), v.begin() + v.size() / 2, v.end());
    return v[v.size() / 2];
  };
  EXPECT_LT(median(err_hi), median(err_lo));
  EXPECT_LT(beta_hi, beta_lo);
}

TEST(SamplingChannel, ClipsAndRenormalizes) {
  CERReport r;
  r.K = 1;
  r.rates[PauliString::parse("I")] = {0.97, 0.0};
  r.rates[PauliString::parse("X")] = {0.02, 0.0};
  r.rates[PauliString::parse("Y")] = {-0.001, 0.0};
  r.rates[PauliString::parse("Z")] = {0.005, 0.0};
  const auto ch = sampling_channel(r);
  EXPECT_EQ(ch.rate(PauliString::parse("Y")), 0.0);
  EXPECT_NEAR(ch.identity_rate(), 0.975, 1e-15);
  EXPECT_NEAR(ch.rate(PauliString::parse("X")), 0.02, 1e-15);
}

}  // namespace
}  // namespace qem
