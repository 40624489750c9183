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

#include <charconv>
#include <cmath>
#include <cstdint>
#include <set>
#include <stdexcept>

#include "qem/circuit.hpp"

namespace qem {

namespace {

void require_normalized(const std::vector<double>& p) {
  double total = 0.0;
  for (double v : p) {
    if (v < -1e-12) throw std::invalid_argument("distribution has negative entries");
    total += v;
  }
  if (std::abs(total - 1.0) > 1e-9) throw std::invalid_argument("distribution is not normalized");
}

}  // namespace

double variation_distance(const std::vector<double>& p, const std::vector<double>& q) {
  if (p.size() != q.size()) throw std::invalid_argument("distributions over different alphabets");
  require_normalized(p);
  require_normalized(q);
  double d = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) d += std::abs(p[i] - q[i]);
  return 0.5 * d;
}

double variation_distance(const Distribution& p, const Distribution& q) {
  std::set<std::string> keys;
  for (const auto& kv : p) keys.insert(kv.first);
  for (const auto& kv : q) keys.insert(kv.first);
  std::vector<double> a, b;
  for (const auto& k : keys) {
    a.push_back(p.count(k) ? p.at(k) : 0.0);
    b.push_back(q.count(k) ? q.at(k) : 0.0);
  }
  return variation_distance(a, b);
}

double improvement(double d_em, double d_unm) {
  if (d_unm == 0.0) throw std::invalid_argument("improvement undefined for zero unmitigated distance");
  return 1.0 - d_em / d_unm;
}

Clipped clip_and_renormalize(const std::vector<double>& v) {
  Clipped c;
  c.probs = v;
  double total = 0.0;
  for (double& x : c.probs) {
    if (x < 0.0) {
      c.clip_delta -= x;
      x = 0.0;
    }
    total += x;
  }
  if (total <= 0.0) {
    for (double& x : c.probs) x = 1.0 / static_cast<double>(c.probs.size());
  } else {
    for (double& x : c.probs) x /= total;
  }
  return c;
}

std::vector<double> qpe_decode(const std::vector<double>& d, int t) {
  if (d.size() != (std::size_t{1} << (t + 1))) {
    throw std::invalid_argument("QPE distribution must cover t ancillae and the target");
  }
  std::vector<double> out(std::size_t{1} << t, 0.0);
  for (std::size_t s = 0; s < d.size(); ++s) {
    std::size_t p = 0;
    for (int i = 0; i < t; ++i) {
      if ((s >> i) & 1) p |= std::size_t{1} << (t - 1 - i);
    }
    out[p] += d[s];
  }
  return out;
}

std::string kappa_label(int p, int t) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, std::ldexp(static_cast<double>(p), -t));
  return std::string(buf, res.ptr);
}

Distribution qpe_decode(const Distribution& d, int t) {
  const auto v = qpe_decode(to_vector(d, t + 1), t);
  Distribution out;
  for (std::size_t p = 0; p < v.size(); ++p) out[kappa_label(static_cast<int>(p), t)] = v[p];
  return out;
}

Distribution to_distribution(const std::vector<double>& probs, int k) {
  Distribution d;
  for (std::size_t s = 0; s < probs.size(); ++s) d[bitstring(s, k)] = probs[s];
  return d;
}

std::vector<double> to_vector(const Distribution& d, int k) {
  std::vector<double> v(std::size_t{1} << k, 0.0);
  for (const auto& [bits, p] : d) {
    if (static_cast<int>(bits.size()) != k) throw std::invalid_argument("wrong register size: " + bits);
    v[parse_bitstring(bits)] = p;
  }
  return v;
}

}  // namespace qem
