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

#include <stdexcept>
#include <utility>

#include "qem/circuit.hpp"
#include "qem/pauli.hpp"

namespace qem {

class UnsupportedGate : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// H P H^dag for a hard cycle, as a phased Pauli string.
std::pair<Phase, PauliString> conjugate_by_cycle(const HardCycle& cycle, const PauliString& p);

/// U P U^dag for an easy cycle built only from named Clifford gates
/// (i, x, y, z, h, s, sdg, sx). Throws UnsupportedGate otherwise.
std::pair<Phase, PauliString> conjugate_by_cycle(const EasyCycle& cycle, const PauliString& p);

}  // namespace qem
