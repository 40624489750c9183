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

#include "qem/metrics.hpp"

namespace qem {

namespace {

std::vector<double> apply_tensored(std::vector<double> v, const std::vector<Eigen::Matrix2d>& ms) {
  const std::size_t k = ms.size();
  if (v.size() != (std::size_t{1} << k)) throw std::invalid_argument("distribution size does not match confusion matrix");
  for (std::size_t q = 0; q < k; ++q) {
    const std::size_t bit = std::size_t{1} << q;
    const Eigen::Matrix2d& m = ms[q];
    for (std::size_t s = 0; s < v.size(); ++s) {
      if (s & bit) continue;
      const double a = v[s], b = v[s | bit];
      v[s] = m(0, 0) * a + m(0, 1) * b;
      v[s | bit] = m(1, 0) * a + m(1, 1) * b;
    }
  }
  return v;
}

}  // namespace

ConfusionMatrix ConfusionMatrix::identity(int n) {
  return {std::vector<Eigen::Matrix2d>(static_cast<std::size_t>(n), Eigen::Matrix2d::Identity())};
}

ConfusionMatrix ConfusionMatrix::from_flips(const std::vector<double>& p10, const std::vector<double>& p01) {
  if (p10.size() != p01.size()) throw std::invalid_argument("flip vectors differ in length");
  ConfusionMatrix cm;
  for (std::size_t q = 0; q < p10.size(); ++q) {
    Eigen::Matrix2d m;
    m << 1 - p10[q], p01[q], p10[q], 1 - p01[q];
    cm.per_qubit.push_back(m);
  }
  return cm;
}

ConfusionMatrix ConfusionMatrix::restrict_to(const std::vector<int>& measured) const {
  ConfusionMatrix out;
  for (int q : measured) out.per_qubit.push_back(per_qubit.at(q));
  return out;
}

ConfusionMatrix rcal_measure(const Backend& backend, int n, std::uint64_t shots, std::uint64_t seed, int jobs) {
  if (shots == 0) throw std::invalid_argument("calibration needs a positive shot count");
  Circuit id;
  id.n = n;
  id.cycles.emplace_back(EasyCycle::identity(n));
  for (int q = 0; q < n; ++q) id.measured.push_back(q);
  Circuit flip = id;
  for (auto& g : std::get<EasyCycle>(flip.cycles[0]).gates) g = EasyGate::named("x");

  const ShotRecord r0 = run_shots(id, backend, shots, derive_seed(seed, "rcal/identity"), jobs);
  const ShotRecord r1 = run_shots(flip, backend, shots, derive_seed(seed, "rcal/x"), jobs);
  ConfusionMatrix cm;
  for (int q = 0; q < n; ++q) {
    double zeros = 0, ones = 0;
    for (const auto& [bits, c] : r0.counts) zeros += bits[q] == '0' ? double(c) : 0.0;
    for (const auto& [bits, c] : r1.counts) ones += bits[q] == '1' ? double(c) : 0.0;
    const double p00 = zeros / double(shots), p11 = ones / double(shots);
    Eigen::Matrix2d m;
    m << p00, 1 - p11, 1 - p00, p11;
    cm.per_qubit.push_back(m);
  }
  return cm;
}

std::vector<double> rem_invert(std::vector<double> v, const ConfusionMatrix& cm) {
  std::vector<Eigen::Matrix2d> inv;
  for (const auto& m : cm.per_qubit) {
    if (!(m(0, 0) > 0.5 && m(1, 1) > 0.5)) {
      throw std::invalid_argument("confusion matrix is ill-conditioned (P(i|i) <= 0.5)");
    }
    inv.push_back(m.inverse());
  }
  return apply_tensored(std::move(v), inv);
}

std::vector<double> rem_invert_stderr(const std::vector<double>& se, const ConfusionMatrix& cm) {
  std::vector<Eigen::Matrix2d> inv_sq;
  for (const auto& m : cm.per_qubit) {
    if (!(m(0, 0) > 0.5 && m(1, 1) > 0.5)) {
      throw std::invalid_argument("confusion matrix is ill-conditioned (P(i|i) <= 0.5)");
    }
    inv_sq.push_back(m.inverse().array().square().matrix());
  }
  std::vector<double> var(se.size());
  for (std::size_t i = 0; i < se.size(); ++i) var[i] = se[i] * se[i];
  var = apply_tensored(std::move(var), inv_sq);
  for (double& v : var) v = std::sqrt(v);
  return var;
}

std::vector<double> rem_apply(const ShotRecord& counts, const ConfusionMatrix& cm) {
  const int k = static_cast<int>(cm.per_qubit.size());
  return clip_and_renormalize(rem_invert(frequencies(counts, k), cm)).probs;
}

std::vector<double> apply_confusion(std::vector<double> v, const ConfusionMatrix& cm) {
  return apply_tensored(std::move(v), cm.per_qubit);
}

}  // namespace qem
