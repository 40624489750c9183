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

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qem/cer.hpp"
#include "qem/circuit.hpp"
#include "qem/estimate.hpp"
#include "qem/noise.hpp"
#include "qem/simulator.hpp"

namespace qem {

using Json = nlohmann::ordered_json;

/// Malformed document. Messages name the offending field.
class SchemaError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

Json circuit_to_json(const Circuit& c);
Circuit circuit_from_json(const Json& j);

Json hard_cycle_to_json(const HardCycle& h);
HardCycle hard_cycle_from_json(const Json& j, int n);

Json channel_to_json(const PauliChannel& ch);
/// Identity rate may be omitted. Throws SchemaError.
PauliChannel channel_from_json(const Json& rates, int n);

/// Noise model document with an optional "readout": {"p10": [...], "p01": [...]}.
/// The qubit count comes from "n" when present, else from `n_hint`.
Json noise_to_json(const NoiseModel& m);
NoiseModel noise_from_json(const Json& j, int n_hint = 0);

Json shots_to_json(const ShotRecord& r);
ShotRecord shots_from_json(const Json& j);

Json report_to_json(const CERReport& r);
CERReport report_from_json(const Json& j);

/// Estimate document; `distribution` is the clipped and renormalized
/// projector distribution when available.
Json estimate_to_json(const Estimate& e, const std::optional<std::vector<double>>& distribution = std::nullopt,
                      int k = 0);

/// Shortest round-trip text of a double.
std::string format_double(double v);

Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace qem
