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

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qem/experiment.hpp"

namespace {

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::string out;
  std::optional<int> jobs;
};

qem::ExperimentConfig load(const std::string& path, const Overrides& o) {
  qem::ExperimentConfig cfg = qem::load_config(path);
  if (const char* env = std::getenv("QEM_JOBS")) {
    try {
      cfg.jobs = std::stoi(env);
    } catch (const std::exception&) {
      throw qem::ConfigError(std::string("QEM_JOBS is not an integer: ") + env);
    }
  }
  if (o.seed) cfg.seed = *o.seed;
  if (o.jobs) cfg.jobs = *o.jobs;
  if (cfg.jobs < 1) throw qem::ConfigError("jobs must be >= 1");
  if (!o.out.empty()) cfg.output = o.out;
  return cfg;
}

void add_common(CLI::App* cmd, std::string& config, Overrides& o) {
  cmd->add_option("config", config, "experiment config (JSON)")->required()->check(CLI::ExistingFile);
  cmd->add_option("--seed", o.seed, "master seed");
  cmd->add_option("--out", o.out, "report path");
  cmd->add_option("--jobs", o.jobs, "worker threads");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum error mitigation experiments"};
  app.require_subcommand(1);

  std::string config;
  Overrides o;
  std::vector<double> sigmas;

  auto* run = app.add_subcommand("run", "characterize, mitigate and score every method");
  add_common(run, config, o);
  auto* sweep = app.add_subcommand("sweep", "estimator spread against target sigma");
  add_common(sweep, config, o);
  sweep->add_option("--sigmas", sigmas, "target standard deviations")->required();
  auto* cer = app.add_subcommand("characterize", "cycle error reconstruction only");
  add_common(cer, config, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const qem::ExperimentConfig cfg = load(config, o);
    qem::ExperimentResult res;
    if (run->parsed()) {
      res = qem::run_experiment(cfg);
    } else if (sweep->parsed()) {
      res = qem::sigma_sweep(cfg, sigmas);
    } else {
      res = qem::characterize(cfg);
    }
    if (cfg.output.empty()) std::cout << res.report.dump(2) << "\n";
    if (cfg.csv.empty() && !res.csv.empty() && !cfg.output.empty()) std::cout << res.csv;
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "qem: " << e.what() << "\n";
    return qem::exit_code_for(e);
  }
}
