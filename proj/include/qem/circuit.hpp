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

#include <compare>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

namespace qem {

/// One single-qubit slot of an easy cycle: either a named gate with
/// parameters, or an explicit 2x2 matrix (name "matrix").
struct EasyGate {
  std::string name = "i";
  std::vector<double> params;
  Eigen::Matrix2cd matrix = Eigen::Matrix2cd::Identity();

  static EasyGate named(std::string name, std::vector<double> params = {});
  static EasyGate from_matrix(const Eigen::Matrix2cd& m);

  bool is_explicit() const { return name == "matrix"; }
  bool is_identity() const { return name == "i"; }
};

struct EasyCycle {
  std::vector<EasyGate> gates;

  static EasyCycle identity(int n);
  int num_qubits() const { return static_cast<int>(gates.size()); }
};

enum class GateKind { cz, cx };

std::string to_string(GateKind k);
GateKind parse_gate_kind(const std::string& s);

/// Two-qubit gate. For cX, q0 is the control and q1 the target.
struct TwoQubitGate {
  int q0 = 0;
  int q1 = 1;
  GateKind kind = GateKind::cz;

  auto operator<=>(const TwoQubitGate&) const = default;
};

struct HardCycle {
  int n = 0;
  std::vector<TwoQubitGate> gates;

  /// Canonical key of the gate multiset: cZ pairs are unordered, gates sorted.
  /// Two cycles share a noise channel exactly when their signatures match.
  std::string signature() const;
  /// Busy qubits as a bitmask.
  std::uint64_t active_mask() const;
};

using Cycle = std::variant<EasyCycle, HardCycle>;

/// Alternating E_1, H_1, E_2, ..., H_m, E_{m+1} with terminal computational
/// basis measurement of `measured` (bitstrings list measured[0] first).
struct Circuit {
  int n = 0;
  std::vector<Cycle> cycles;
  std::vector<int> measured;

  /// Number of hard cycles m. Assumes the circuit is valid.
  int num_hard() const { return static_cast<int>(cycles.size()) / 2; }
  const EasyCycle& easy(int j) const { return std::get<EasyCycle>(cycles.at(2 * j)); }
  EasyCycle& easy(int j) { return std::get<EasyCycle>(cycles.at(2 * j)); }
  const HardCycle& hard(int j) const { return std::get<HardCycle>(cycles.at(2 * j + 1)); }
  HardCycle& hard(int j) { return std::get<HardCycle>(cycles.at(2 * j + 1)); }
};

/// All invariant violations, in circuit order. Empty means the circuit is valid.
std::vector<std::string> validate(const Circuit& c);

/// Throws std::invalid_argument carrying the first violation.
void require_valid(const Circuit& c);

/// Observable with unit spectral norm: a projector onto a bitstring of the
/// measured register, or a Pauli string over all n qubits.
struct Observable {
  enum class Kind { projector, pauli };
  Kind kind = Kind::projector;
  std::string label;

  static Observable projector(std::string bits) { return {Kind::projector, std::move(bits)}; }
  static Observable pauli(std::string text) { return {Kind::pauli, std::move(text)}; }
};

/// The 2^k projectors over a k-qubit measured register, in index order.
std::vector<Observable> all_projectors(int k);

/// Bitstring text of an outcome index; character i is bit i of `outcome`.
std::string bitstring(std::uint64_t outcome, int k);
std::uint64_t parse_bitstring(const std::string& bits);

/// Accumulates single-qubit gates and flushes them into an easy cycle each
/// time a hard cycle is appended. Consecutive gates on a qubit are multiplied
/// into one explicit matrix.
class CircuitBuilder {
 public:
  explicit CircuitBuilder(int n);

  CircuitBuilder& gate(int q, const std::string& name, std::vector<double> params = {});
  CircuitBuilder& gate(int q, const Eigen::Matrix2cd& m);
  CircuitBuilder& cz(int a, int b);
  CircuitBuilder& hard(std::vector<TwoQubitGate> gates);

  /// cX compiled as H_t cZ H_t (one hard cycle).
  CircuitBuilder& cx_via_cz(int control, int target);
  /// Three cX, each through cZ.
  CircuitBuilder& swap_via_cz(int a, int b);
  /// diag(1, 1, 1, e^{i phi}) with two cZ cycles.
  CircuitBuilder& cphase_via_cz(int a, int b, double phi);

  Circuit finish(std::vector<int> measured);

 private:
  EasyCycle flush();

  int n_;
  std::vector<std::vector<EasyGate>> pending_;
  Circuit circuit_;
};

}  // namespace qem
