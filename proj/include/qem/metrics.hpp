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

#pragma once

#include <map>
#include <string>
#include <vector>

namespace qem {

/// Probabilities keyed by bitstring; absent keys are zero.
using Distribution = std::map<std::string, double>;

/// Half the L1 distance. Both inputs must be normalized (entries >= 0, total
/// 1 within 1e-9); throws std::invalid_argument otherwise.
double variation_distance(const Distribution& p, const Distribution& q);
double variation_distance(const std::vector<double>& p, const std::vector<double>& q);

/// 1 - d_em / d_unm. Throws std::invalid_argument when d_unm is 0.
double improvement(double d_em, double d_unm);

struct Clipped {
  std::vector<double> probs;
  /// Total negative mass removed before renormalizing.
  double clip_delta = 0.0;
};

/// Sets negative entries to zero and rescales to total 1. An all-zero input
/// maps to the uniform distribution.
Clipped clip_and_renormalize(const std::vector<double>& v);

/// Marginal over kappa-hat = p / 2^t, indexed by p, from a distribution over
/// t ancilla bits (most significant first) followed by the target bit.
std::vector<double> qpe_decode(const std::vector<double>& d, int t);
Distribution qpe_decode(const Distribution& d, int t);

/// Shortest decimal text of p / 2^t ("0", "0.25", ...).
std::string kappa_label(int p, int t);

Distribution to_distribution(const std::vector<double>& probs, int k);
std::vector<double> to_vector(const Distribution& d, int k);

}  // namespace qem
