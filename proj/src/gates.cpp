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

#include "qem/gates.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qem {

namespace {

using cd = std::complex<double>;
constexpr cd kI{0, 1};

Eigen::Matrix2cd make(cd a, cd b, cd c, cd d) {
  Eigen::Matrix2cd m;
  m << a, b, c, d;
  return m;
}

int param_count(std::string_view name) {
  if (name == "rx" || name == "ry" || name == "rz" || name == "p") return 1;
  if (name == "u3") return 3;
  return 0;
}

}  // namespace

bool is_known_gate(std::string_view name) {
  static constexpr std::string_view kNames[] = {"i",  "x",  "y",   "z",  "h",  "s", "sdg",
                                                "t",  "tdg", "sx", "rx", "ry", "rz", "p", "u3"};
  for (auto n : kNames) {
    if (n == name) return true;
  }
  return false;
}

Eigen::Matrix2cd gate_matrix(std::string_view name, std::span<const double> params) {
  if (!is_known_gate(name)) {
    throw std::invalid_argument("unknown gate '" + std::string(name) + "'");
  }
  if (static_cast<int>(params.size()) != param_count(name)) {
    throw std::invalid_argument("gate '" + std::string(name) + "' expects " +
                                std::to_string(param_count(name)) + " parameter(s)");
  }
  const double r = 1.0 / std::sqrt(2.0);
  if (name == "i") return Eigen::Matrix2cd::Identity();
  if (name == "x") return make(0, 1, 1, 0);
  if (name == "y") return make(0, -kI, kI, 0);
  if (name == "z") return make(1, 0, 0, -1);
  if (name == "h") return make(r, r, r, -r);
  if (name == "s") return make(1, 0, 0, kI);
  if (name == "sdg") return make(1, 0, 0, -kI);
  if (name == "t") return make(1, 0, 0, std::exp(kI * (M_PI / 4)));
  if (name == "tdg") return make(1, 0, 0, std::exp(-kI * (M_PI / 4)));
  if (name == "sx") return make(r, -kI * r, -kI * r, r);
  if (name == "p") return make(1, 0, 0, std::exp(kI * params[0]));
  if (name == "u3") {
    const double th = params[0], ph = params[1], la = params[2];
    return make(std::cos(th / 2), -std::exp(kI * la) * std::sin(th / 2),
                std::exp(kI * ph) * std::sin(th / 2), std::exp(kI * (ph + la)) * std::cos(th / 2));
  }
  const double c = std::cos(params[0] / 2), s = std::sin(params[0] / 2);
  if (name == "rx") return make(c, -kI * s, -kI * s, c);
  if (name == "ry") return make(c, -s, s, c);
  return make(std::exp(-kI * (params[0] / 2)), 0, 0, std::exp(kI * (params[0] / 2)));
}

Eigen::Matrix2cd pauli_1q(char label) {
  switch (label) {
    case 'I': return gate_matrix("i");
    case 'X': return gate_matrix("x");
    case 'Y': return gate_matrix("y");
    case 'Z': return gate_matrix("z");
    default: throw std::invalid_argument(std::string("not a Pauli label: '") + label + "'");
  }
}

}  // namespace qem
