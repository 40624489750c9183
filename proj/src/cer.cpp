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
#include <set>

#include "qem/clifford.hpp"
#include "qem/gates.hpp"
#include "qem/parallel.hpp"
#include "qem/rng.hpp"
#include "qem/statevector.hpp"

namespace qem {

namespace {

struct Point {
  int depth;
  double mean;
  std::uint64_t shots;
};

// One benchmarking run: returns the sum of the +-1 outcomes over `shots`.
double run_sequence(const HardCycle& cycle, const NoiseEntry& noise,
                    const std::optional<ReadoutError>& ro, const PauliString& b, int depth,
                    Rng& rng, std::uint64_t shots) {
  const int n = cycle.n;
  const std::uint64_t twirl_count = std::uint64_t{1} << (2 * n);
  static const Eigen::Matrix2cd kH = gate_matrix("h");
  static const Eigen::Matrix2cd kPrepY = gate_matrix("s") * gate_matrix("h");
  static const Eigen::Matrix2cd kMeasY = gate_matrix("h") * gate_matrix("sdg");
  double sum = 0.0;
  for (std::uint64_t s = 0; s < shots; ++s) {
    StateVector<double> psi = zero_state<double>(n);
    for (int q = 0; q < n; ++q) {
      const char l = b.at(q);
      if (l == 'X') apply_1q(psi, q, kH);
      if (l == 'Y') apply_1q(psi, q, kPrepY);
    }
    PauliString frame = b;
    int sign = 1;
    for (int k = 0; k < depth; ++k) {
      const PauliString t = PauliString::from_index(n, rng.below(twirl_count));
      apply_pauli(psi, t);
      if (symplectic_inner(t, frame)) sign = -sign;
      apply_hard(psi, cycle);
      const auto [ph, img] = conjugate_by_cycle(cycle, frame);
      sign *= ph.sign();
      frame = img;
      if (const auto* ch = std::get_if<PauliChannel>(&noise)) {
        apply_pauli(psi, ch->sample(rng));
      } else {
        const auto& co = std::get<CoherentNoise>(noise);
        apply_kq(psi, co.qubits, co.unitary);
      }
    }
    for (int q = 0; q < n; ++q) {
      const char l = frame.at(q);
      if (l == 'X') apply_1q(psi, q, kH);
      if (l == 'Y') apply_1q(psi, q, kMeasY);
    }
    const double u = rng.uniform();
    double acc = 0.0;
    std::uint64_t idx = static_cast<std::uint64_t>(psi.size()) - 1;
    for (Eigen::Index i = 0; i < psi.size(); ++i) {
      acc += std::norm(psi(i));
      if (u < acc) {
        idx = static_cast<std::uint64_t>(i);
        break;
      }
    }
    if (ro) {
      for (int q = 0; q < n; ++q) {
        const bool one = (idx >> q) & 1;
        const auto& probs = one ? ro->p01 : ro->p10;
        const double flip = q < static_cast<int>(probs.size()) ? probs[q] : 0.0;
        if (flip > 0.0 && rng.bernoulli(flip)) idx ^= std::uint64_t{1} << q;
      }
    }
    const int parity = std::popcount(idx & frame.support()) & 1;
    sum += (parity ? -sign : sign);
  }
  return sum;
}

std::vector<int> depth_grid(const std::vector<int>& depths) {
  std::set<int> grid;
  for (int d : depths) {
    if (d < 2) throw std::invalid_argument("benchmark depths must be >= 2");
    grid.insert(d);
    if (d % 2 == 0) grid.insert(d - 1);
  }
  return {grid.begin(), grid.end()};
}

// Joint weighted fit of one orbit. experiments[e] holds the points of the
// run that prepared orbit[e]; returns (f, stderr) for each orbit member.
// With clean SPAM the intercepts are known to be 1 and are not fitted.
std::vector<std::pair<double, double>> fit_orbit(const std::vector<PauliString>& orbit,
                                                 const std::vector<int>& prepared,
                                                 const std::vector<std::vector<Point>>& data, bool clean_spam) {
  const int members = static_cast<int>(orbit.size());
  const int exps = clean_spam ? 0 : static_cast<int>(prepared.size());
  const int params = exps + members;
  std::vector<Eigen::RowVectorXd> rows;
  std::vector<double> ys, ws;
  for (int e = 0; e < static_cast<int>(prepared.size()); ++e) {
    for (const auto& pt : data[e]) {
      if (pt.mean <= 0.0) continue;
      const double n = static_cast<double>(pt.shots);
      const double var = std::max(1.0 - pt.mean * pt.mean, 1.0 / n) / (n * pt.mean * pt.mean);
      Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(params);
      if (!clean_spam) row(e) = 1.0;
      // Depth d applies the cycle's noise to H(b) on odd steps and b on even ones.
      const int self = prepared[e];
      const int other = members == 2 ? 1 - self : self;
      row(exps + other) += (pt.depth + 1) / 2;
      row(exps + self) += pt.depth / 2;
      rows.push_back(row);
      ys.push_back(std::log(pt.mean));
      ws.push_back(1.0 / var);
    }
  }
  if (rows.empty()) {
    throw FitFailure("no positive fidelity estimates for Pauli " + orbit.front().str());
  }
  Eigen::MatrixXd x(static_cast<Eigen::Index>(rows.size()), params);
  Eigen::VectorXd y(x.rows()), w(x.rows());
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    x.row(i) = rows[i];
    y(i) = ys[i];
    w(i) = ws[i];
  }
  const Eigen::MatrixXd xtw = x.transpose() * w.asDiagonal();
  const Eigen::MatrixXd normal = xtw * x;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(normal);
  if (lu.rank() < params) throw FitFailure("decay data do not determine the fidelities of " + orbit.front().str());
  const Eigen::VectorXd beta = lu.solve(xtw * y);
  const Eigen::MatrixXd cov = lu.inverse();
  std::vector<std::pair<double, double>> out;
  for (int k = 0; k < members; ++k) {
    const double f = std::exp(beta(exps + k));
    out.emplace_back(f, f * std::sqrt(std::max(0.0, cov(exps + k, exps + k))));
  }
  return out;
}

}  // namespace

std::vector<PauliString> paulis_up_to_weight(int n, int K) {
  std::vector<PauliString> out;
  for (std::uint64_t a = 0; a < (std::uint64_t{1} << (2 * n)); ++a) {
    PauliString p = PauliString::from_index(n, a);
    if (weight(p) <= K) out.push_back(p);
  }
  return out;
}

std::vector<DecayCurve> benchmark_cycle(const HardCycle& cycle, const NoiseModel& noise,
                                        const BenchmarkOptions& opts) {
  const int n = cycle.n;
  if (n > kMaxPauliQubits / 2 || n > 6) throw std::invalid_argument("benchmarking supports n <= 6");
  if (opts.shots_per_point == 0) throw std::invalid_argument("shots_per_point must be positive");
  const NoiseEntry& entry = noise.at(cycle);
  const std::vector<int> grid = depth_grid(opts.depths);
  const int K = opts.max_weight < 0 ? n : opts.max_weight;
  std::vector<PauliString> tracked;
  for (const auto& p : paulis_up_to_weight(n, K)) {
    if (!p.is_identity()) tracked.push_back(p);
  }

  std::map<PauliString, std::vector<Point>> data;
  for (const auto& b : tracked) {
    for (int d : grid) {
      const std::uint64_t sub = derive_seed(opts.seed, "cer/" + b.str() + "/" + std::to_string(d));
      const auto parts = run_batches(opts.shots_per_point, opts.jobs, [&](std::uint64_t bi, std::uint64_t count) {
        Rng rng(derive_seed(sub, bi));
        return run_sequence(cycle, entry, noise.readout, b, d, rng, count);
      });
      const double sum = pairwise_sum(parts, 0, parts.size(), [](double v) { return v; });
      data[b].push_back({d, sum / static_cast<double>(opts.shots_per_point), opts.shots_per_point});
    }
  }

  std::map<PauliString, std::pair<double, double>> fits;
  for (const auto& b : tracked) {
    if (fits.count(b)) continue;
    const PauliString hb = conjugate_by_cycle(cycle, b).second;
    std::vector<PauliString> orbit{b};
    if (hb != b) orbit.push_back(hb);
    std::vector<int> prepared;
    std::vector<std::vector<Point>> pts;
    for (int k = 0; k < static_cast<int>(orbit.size()); ++k) {
      if (data.count(orbit[k])) {
        prepared.push_back(k);
        pts.push_back(data[orbit[k]]);
      }
    }
    const auto res = fit_orbit(orbit, prepared, pts, !noise.readout.has_value());
    for (std::size_t k = 0; k < orbit.size(); ++k) fits[orbit[k]] = res[k];
  }

  std::vector<DecayCurve> curves;
  for (const auto& b : tracked) {
    DecayCurve c;
    c.pauli = b;
    for (const auto& pt : data[b]) {
      c.depths.push_back(pt.depth);
      c.fidelity_estimates.push_back(pt.mean);
    }
    c.fitted = fits[b].first;
    c.fit_stderr = fits[b].second;
    curves.push_back(std::move(c));
  }
  return curves;
}

std::vector<DecayCurve> analytic_curves(const PauliChannel& ch, int max_weight) {
  const int n = ch.num_qubits();
  std::vector<DecayCurve> out;
  for (const auto& b : paulis_up_to_weight(n, max_weight < 0 ? n : max_weight)) {
    DecayCurve c;
    c.pauli = b;
    c.fitted = pauli_fidelity(ch, b);
    c.fit_stderr = 0.0;
    out.push_back(std::move(c));
  }
  return out;
}

CERReport reconstruct_rates(const std::vector<DecayCurve>& curves, int K, int n) {
  if (K < 0 || K > n) throw std::invalid_argument("truncation weight must lie in [0, n]");
  std::map<PauliString, std::pair<double, double>> f;
  f[PauliString(n)] = {1.0, 0.0};
  for (const auto& c : curves) {
    if (c.pauli.num_qubits() != n) throw std::invalid_argument("curve width differs from n");
    f[c.pauli] = {c.fitted, c.fit_stderr};
  }
  const std::vector<PauliString> targets = paulis_up_to_weight(n, K);
  CERReport r;
  r.K = K;
  const std::uint64_t total = std::uint64_t{1} << (2 * n);
  if (f.size() == total) {
    const double scale = 1.0 / static_cast<double>(total);
    for (const auto& a : targets) {
      double est = 0.0, var = 0.0;
      for (const auto& [b, fb] : f) {
        est += symplectic_inner(a, b) ? -fb.first : fb.first;
        var += fb.second * fb.second;
      }
      r.rates[a] = {est * scale, std::sqrt(var) * scale};
    }
  } else {
    for (const auto& b : targets) {
      if (!f.count(b)) {
        throw std::invalid_argument("insufficient curves for K = " + std::to_string(K) +
                                    ": missing " + b.str());
      }
    }
    const auto size = static_cast<Eigen::Index>(targets.size());
    Eigen::MatrixXd m(size, size);
    Eigen::VectorXd rhs(size), se(size);
    for (Eigen::Index i = 0; i < size; ++i) {
      for (Eigen::Index j = 0; j < size; ++j) m(i, j) = symplectic_inner(targets[j], targets[i]) ? -1.0 : 1.0;
      rhs(i) = f[targets[i]].first;
      se(i) = f[targets[i]].second;
    }
    const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(m);
    const Eigen::VectorXd est = qr.solve(rhs);
    const Eigen::MatrixXd inv = qr.inverse();
    for (Eigen::Index a = 0; a < size; ++a) {
      const double sd = std::sqrt((inv.row(a).array().square() * se.transpose().array().square()).sum());
      r.rates[targets[a]] = {est(a), sd};
    }
  }
  double sum = 0.0;
  for (const auto& [p, e] : r.rates) sum += e.est;
  r.residual_mass = 1.0 - sum;
  for (const auto& [p, e] : r.rates) {
    if (p.is_identity() || e.est < kBetaFloor) continue;
    r.beta = std::max(r.beta, e.stderr / e.est);
  }
  return r;
}

PauliChannel sampling_channel(const CERReport& report) {
  std::map<PauliString, double> rates;
  int n = 0;
  double others = 0.0;
  for (const auto& [p, e] : report.rates) {
    n = p.num_qubits();
    if (p.is_identity()) continue;
    const double v = std::max(0.0, e.est);
    rates[p] = v;
    others += v;
  }
  if (others > 1.0) {
    for (auto& kv : rates) kv.second /= others;
    others = 1.0;
  }
  rates[PauliString(n)] = std::max(0.0, 1.0 - others);
  return PauliChannel::from_rates(n, rates);
}

}  // namespace qem
