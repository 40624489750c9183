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

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qem/circuit.hpp"
#include "qem/noise.hpp"
#include "qem/pec.hpp"
#include "qem/serialize.hpp"

namespace qem {

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct CircuitSpec {
  std::string tag;
  Circuit circuit;
  /// Ancilla count for QPE circuits, 0 otherwise.
  int qpe_t = 0;
  double kappa = 0.0;
};

struct NoiseSpec {
  /// Synthetic per-cycle channels with this total error, unless `model` is set.
  double total_error = 0.02;
  std::optional<NoiseModel> model;
};

struct CerSettings {
  std::vector<int> depths{2, 4, 8, 16};
  std::uint64_t shots = 2000;
  /// "auto" (exhaustive for n <= 3, truncated above), "exhaustive",
  /// "truncated", or "exact" (analytic fidelities of the twirled noise).
  std::string mode = "auto";
};

struct ExperimentConfig {
  std::vector<CircuitSpec> circuits;
  NoiseSpec noise;
  std::optional<ReadoutError> readout;
  std::vector<std::string> methods{"none"};
  double sigma = 0.02;
  int alpha = 3;
  bool id_insert = true;
  /// Truncation weight; negative means n for exhaustive and 2 for truncated runs.
  int K = -1;
  CerSettings cer;
  std::uint64_t rcal_shots = 100000;
  int repetitions = 5;
  std::uint64_t seed = 1;
  std::string output;
  std::string csv;
  int jobs = 1;
};

/// Parses a config document. Relative file references resolve against
/// `base_dir`. Throws ConfigError.
ExperimentConfig parse_config(const Json& j, const std::string& base_dir = ".");
ExperimentConfig load_config(const std::string& path);

/// Noise model of a circuit under the config, readout included.
NoiseModel resolve_noise(const ExperimentConfig& cfg, const CircuitSpec& spec);

/// CER reports for every distinct hard cycle of the circuit.
ReportSet characterize_circuit(const ExperimentConfig& cfg, const CircuitSpec& spec, const NoiseModel& noise);

struct ExperimentResult {
  Json report;
  std::string csv;
};

/// CER once per cycle signature, then every (repetition, method) pair on
/// a pool of cfg.jobs workers. Writes cfg.output and cfg.csv when set. On
/// error the partial report is written with "status": "failed" and the
/// exception is rethrown.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

/// Empirical estimator std (max over projectors) across cfg.repetitions for
/// each sigma, using the first mitigating method of the config.
ExperimentResult sigma_sweep(const ExperimentConfig& cfg, const std::vector<double>& sigmas);

/// CER reports only.
ExperimentResult characterize(const ExperimentConfig& cfg);

/// Process exit status for an exception escaping the runners.
int exit_code_for(const std::exception& e);

}  // namespace qem
