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

#include "qem/circuit.hpp"

#include <algorithm>
#include <stdexcept>

#include "qem/gates.hpp"

namespace qem {

EasyGate EasyGate::named(std::string name, std::vector<double> params) {
  EasyGate g;
  g.matrix = gate_matrix(name, params);
  g.name = std::move(name);
  g.params = std::move(params);
  return g;
}

EasyGate EasyGate::from_matrix(const Eigen::Matrix2cd& m) {
  EasyGate g;
  g.name = "matrix";
  g.matrix = m;
  return g;
}

EasyCycle EasyCycle::identity(int n) {
  EasyCycle c;
  c.gates.assign(static_cast<std::size_t>(n), EasyGate{});
  return c;
}

std::string to_string(GateKind k) { return k == GateKind::cz ? "cz" : "cx"; }

GateKind parse_gate_kind(const std::string& s) {
  if (s == "cz") return GateKind::cz;
  if (s == "cx") return GateKind::cx;
  throw std::invalid_argument("unsupported two-qubit gate kind '" + s + "'");
}

std::string HardCycle::signature() const {
  std::vector<TwoQubitGate> canon = gates;
  for (auto& g : canon) {
    if (g.kind == GateKind::cz && g.q0 > g.q1) std::swap(g.q0, g.q1);
  }
  std::sort(canon.begin(), canon.end());
  std::string s = "n" + std::to_string(n) + ":";
  for (std::size_t i = 0; i < canon.size(); ++i) {
    if (i) s += ",";
    s += to_string(canon[i].kind) + "(" + std::to_string(canon[i].q0) + "," +
         std::to_string(canon[i].q1) + ")";
  }
  return s;
}

std::uint64_t HardCycle::active_mask() const {
  std::uint64_t m = 0;
  for (const auto& g : gates) m |= (std::uint64_t{1} << g.q0) | (std::uint64_t{1} << g.q1);
  return m;
}

std::vector<std::string> validate(const Circuit& c) {
  std::vector<std::string> v;
  if (c.n < 1 || c.n > 62) v.push_back("qubit count out of range");
  if (c.cycles.empty()) {
    v.push_back("circuit has no cycles");
    return v;
  }
  for (std::size_t i = 0; i < c.cycles.size(); ++i) {
    const bool want_easy = i % 2 == 0;
    const bool is_easy = std::holds_alternative<EasyCycle>(c.cycles[i]);
    if (want_easy != is_easy) {
      v.push_back("alternation broken at cycle " + std::to_string(i));
      break;
    }
  }
  if (!std::holds_alternative<EasyCycle>(c.cycles.back())) {
    v.push_back("circuit must end with an easy cycle");
  }
  for (std::size_t i = 0; i < c.cycles.size(); ++i) {
    const std::string where = " in cycle " + std::to_string(i);
    if (const auto* e = std::get_if<EasyCycle>(&c.cycles[i])) {
      if (e->num_qubits() != c.n) v.push_back("easy cycle width mismatch" + where);
      for (const auto& g : e->gates) {
        if (unitarity_defect(g.matrix) > 1e-10) {
          v.push_back("non-unitary easy gate" + where);
          break;
        }
      }
    } else {
      const auto& h = std::get<HardCycle>(c.cycles[i]);
      if (h.n != c.n) v.push_back("hard cycle width mismatch" + where);
      std::uint64_t used = 0;
      for (const auto& g : h.gates) {
        if (g.q0 < 0 || g.q1 < 0 || g.q0 >= c.n || g.q1 >= c.n) {
          v.push_back("qubit index out of range" + where);
          continue;
        }
        const std::uint64_t bits = (std::uint64_t{1} << g.q0) | (std::uint64_t{1} << g.q1);
        if (g.q0 == g.q1 || (used & bits) != 0) v.push_back("overlapping two-qubit gates" + where);
        used |= bits;
      }
    }
  }
  std::uint64_t seen = 0;
  for (int q : c.measured) {
    if (q < 0 || q >= c.n) {
      v.push_back("measured qubit out of range");
    } else if ((seen >> q) & 1) {
      v.push_back("measured qubit listed twice");
    } else {
      seen |= std::uint64_t{1} << q;
    }
  }
  return v;
}

void require_valid(const Circuit& c) {
  const auto v = validate(c);
  if (!v.empty()) throw std::invalid_argument("invalid circuit: " + v.front());
}

std::string bitstring(std::uint64_t outcome, int k) {
  std::string s(static_cast<std::size_t>(k), '0');
  for (int i = 0; i < k; ++i) {
    if ((outcome >> i) & 1) s[i] = '1';
  }
  return s;
}

std::uint64_t parse_bitstring(const std::string& bits) {
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') {
      v |= std::uint64_t{1} << i;
    } else if (bits[i] != '0') {
      throw std::invalid_argument("not a bitstring: '" + bits + "'");
    }
  }
  return v;
}

std::vector<Observable> all_projectors(int k) {
  std::vector<Observable> obs;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << k); ++s) {
    obs.push_back(Observable::projector(bitstring(s, k)));
  }
  return obs;
}

CircuitBuilder::CircuitBuilder(int n) : n_(n), pending_(static_cast<std::size_t>(n)) {
  circuit_.n = n;
}

CircuitBuilder& CircuitBuilder::gate(int q, const std::string& name, std::vector<double> params) {
  pending_.at(q).push_back(EasyGate::named(name, std::move(params)));
  return *this;
}

CircuitBuilder& CircuitBuilder::gate(int q, const Eigen::Matrix2cd& m) {
  pending_.at(q).push_back(EasyGate::from_matrix(m));
  return *this;
}

EasyCycle CircuitBuilder::flush() {
  EasyCycle e = EasyCycle::identity(n_);
  for (int q = 0; q < n_; ++q) {
    auto& gates = pending_[q];
    if (gates.size() == 1) {
      e.gates[q] = gates.front();
    } else if (gates.size() > 1) {
      Eigen::Matrix2cd m = Eigen::Matrix2cd::Identity();
      for (const auto& g : gates) m = g.matrix * m;
      e.gates[q] = EasyGate::from_matrix(m);
    }
    gates.clear();
  }
  return e;
}

CircuitBuilder& CircuitBuilder::hard(std::vector<TwoQubitGate> gates) {
  circuit_.cycles.emplace_back(flush());
  circuit_.cycles.emplace_back(HardCycle{n_, std::move(gates)});
  return *this;
}

CircuitBuilder& CircuitBuilder::cz(int a, int b) { return hard({{a, b, GateKind::cz}}); }

CircuitBuilder& CircuitBuilder::cx_via_cz(int control, int target) {
  gate(target, "h");
  cz(control, target);
  return gate(target, "h");
}

CircuitBuilder& CircuitBuilder::swap_via_cz(int a, int b) {
  cx_via_cz(a, b);
  cx_via_cz(b, a);
  return cx_via_cz(a, b);
}

CircuitBuilder& CircuitBuilder::cphase_via_cz(int a, int b, double phi) {
  gate(a, "p", {phi / 2});
  gate(b, "p", {phi / 2});
  cx_via_cz(a, b);
  gate(b, "p", {-phi / 2});
  return cx_via_cz(a, b);
}

Circuit CircuitBuilder::finish(std::vector<int> measured) {
  circuit_.cycles.emplace_back(flush());
  circuit_.measured = std::move(measured);
  Circuit out = std::move(circuit_);
  circuit_ = Circuit{};
  circuit_.n = n_;
  return out;
}

}  // namespace qem
