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

#include "qem/experiment.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <filesystem>
#include <mutex>
#include <thread>

#include "qem/builders.hpp"
#include "qem/cer.hpp"
#include "qem/metrics.hpp"
#include "qem/nox.hpp"
#include "qem/rem.hpp"
#include "qem/simulator.hpp"
#include "qem/twirl.hpp"

namespace qem {

namespace {

namespace fs = std::filesystem;

const std::vector<std::string> kMethods = {"none", "rem", "pec", "nox", "pec+rem", "nox+rem"};

template <typename T>
T get_or(const Json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config field '") + key + "': " + e.what());
  }
}

std::string resolve_path(const std::string& base, const std::string& p) {
  const fs::path path(p);
  const fs::path full = path.is_absolute() ? path : fs::path(base) / path;
  if (!fs::exists(full)) throw ConfigError("referenced file does not exist: " + full.string());
  return full.string();
}

// Output locations named in a config file are relative to that file.
std::string output_path(const std::string& base, const std::string& p) {
  if (p.empty() || fs::path(p).is_absolute()) return p;
  return (fs::path(base) / p).string();
}

CircuitSpec parse_circuit(const Json& j, const std::string& base) {
  CircuitSpec s;
  try {
    if (j.contains("builder")) {
      const std::string b = j.at("builder").get<std::string>();
      const Json params = j.contains("params") ? j.at("params") : j;
      if (b == "w_state") {
        const int n = get_or<int>(params, "n", 2);
        s.circuit = build_w_state_circuit(n);
        s.tag = "w_state_n" + std::to_string(n);
      } else if (b == "qpe") {
        const int t = get_or<int>(params, "t", 2);
        s.kappa = get_or<double>(params, "kappa", 0.25);
        s.qpe_t = t;
        s.circuit = build_qpe_circuit(t, s.kappa);
        s.tag = "qpe_t" + std::to_string(t) + "_k" + format_double(s.kappa);
      } else if (b == "random") {
        const int n = get_or<int>(params, "n", 4);
        const int m = get_or<int>(params, "m", 2);
        const auto seed = get_or<std::uint64_t>(params, "seed", 0);
        s.circuit = build_random_circuit(n, m, seed);
        s.tag = "random_n" + std::to_string(n) + "_m" + std::to_string(m) + "_s" + std::to_string(seed);
      } else {
        throw ConfigError("unknown circuit builder '" + b + "'");
      }
    } else if (j.contains("file")) {
      const std::string path = resolve_path(base, j.at("file").get<std::string>());
      s.circuit = circuit_from_json(read_json_file(path));
      s.tag = fs::path(path).stem().string();
    } else if (j.contains("inline")) {
      s.circuit = circuit_from_json(j.at("inline"));
      s.tag = "inline";
    } else {
      throw ConfigError("circuit needs 'builder', 'file' or 'inline'");
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(std::string("circuit: ") + e.what());
  }
  s.tag = get_or<std::string>(j, "tag", s.tag);
  const auto v = validate(s.circuit);
  if (!v.empty()) throw ConfigError("circuit '" + s.tag + "': " + v.front());
  if (s.circuit.n > kMaxShotQubits) throw ConfigError("circuits are limited to 6 qubits");
  return s;
}

void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& fn) {
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex mu;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!error) error = std::current_exception();
        next.store(count);
      }
    }
  };
  const int threads = static_cast<int>(std::min<std::size_t>(std::max(1, jobs), count));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (error) std::rethrow_exception(error);
}

// Everything a (repetition, method) task needs, fixed before the pool starts.
struct CircuitContext {
  const CircuitSpec* spec = nullptr;
  NoiseModel noise;
  ReportSet reports;
  std::optional<ConfusionMatrix> confusion;
  std::vector<Observable> obs;
  std::vector<double> ideal;
  int k = 0;
};

struct MethodRun {
  Estimate estimate;
  std::vector<double> distribution;
  double clip_delta = 0.0;
  double vd = 0.0;
};

MethodRun run_method(const ExperimentConfig& cfg, const CircuitContext& ctx, const std::string& method,
                     double sigma, std::uint64_t seed) {
  const Circuit& c = ctx.spec->circuit;
  const TrajectoryBackend backend(ctx.noise, true);
  const bool rem = method.size() > 4 && method.substr(method.size() - 4) == "+rem";
  const std::string base = method == "rem" ? "none" : (rem ? method.substr(0, method.size() - 4) : method);
  Estimate e;
  if (base == "none") {
    e = direct_estimate(c, backend, ctx.obs, sigma, seed);
  } else if (base == "pec") {
    e = pec_estimate(pec_plan(c, ctx.reports, sigma), backend, ctx.obs, seed);
  } else if (base == "nox") {
    const auto amp = cfg.id_insert ? Amplification::identity_insertion : Amplification::append_errors;
    e = nox_estimate(nox_plan(c, cfg.alpha, amp, ctx.reports, sigma), backend, ctx.obs, seed);
  } else {
    throw ConfigError("unknown method '" + method + "'");
  }
  std::vector<double> est(ctx.obs.size()), se(ctx.obs.size());
  for (std::size_t s = 0; s < ctx.obs.size(); ++s) {
    est[s] = e.values.at(ctx.obs[s].label).est;
    se[s] = e.values.at(ctx.obs[s].label).stderr;
  }
  if (method == "rem" || rem) {
    est = rem_invert(est, *ctx.confusion);
    se = rem_invert_stderr(se, *ctx.confusion);
    for (std::size_t s = 0; s < ctx.obs.size(); ++s) e.values[ctx.obs[s].label] = {est[s], se[s]};
    e.out_of_range = false;
    flag_range(e, ctx.obs);
  }
  e.method = method;
  MethodRun r;
  const Clipped cl = clip_and_renormalize(est);
  r.estimate = std::move(e);
  r.distribution = cl.probs;
  r.clip_delta = cl.clip_delta;
  r.vd = variation_distance(r.distribution, ctx.ideal);
  return r;
}

double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

double std_of(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double m = mean_of(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(v.size() - 1));
}

CircuitContext prepare(const ExperimentConfig& cfg, const CircuitSpec& spec, Json& entry) {
  CircuitContext ctx;
  ctx.spec = &spec;
  ctx.noise = resolve_noise(cfg, spec);
  ctx.k = static_cast<int>(spec.circuit.measured.size());
  ctx.obs = all_projectors(ctx.k);
  ctx.ideal = ideal_distribution(spec.circuit);
  entry["circuit"] = spec.tag;
  entry["n"] = spec.circuit.n;
  entry["hard_cycles"] = spec.circuit.num_hard();
  entry["ideal"] = to_distribution(ctx.ideal, ctx.k);
  bool needs_cer = false, needs_rem = false;
  for (const auto& m : cfg.methods) {
    needs_cer = needs_cer || m.rfind("pec", 0) == 0 || (m.rfind("nox", 0) == 0 && !cfg.id_insert);
    needs_rem = needs_rem || m.find("rem") != std::string::npos;
  }
  if (needs_cer) {
    ctx.reports = characterize_circuit(cfg, spec, ctx.noise);
    Json reps = Json::array();
    for (const auto& [sig, r] : ctx.reports) reps.push_back(report_to_json(r));
    entry["cer"] = reps;
  }
  if (needs_rem) {
    const TrajectoryBackend backend(ctx.noise, true);
    const ConfusionMatrix cm = rcal_measure(backend, spec.circuit.n, cfg.rcal_shots,
                                            derive_seed(cfg.seed, "rcal/" + spec.tag), cfg.jobs);
    ctx.confusion = cm.restrict_to(spec.circuit.measured);
    Json cal = Json::array();
    for (const auto& m : cm.per_qubit) cal.push_back({{"p00", m(0, 0)}, {"p11", m(1, 1)}});
    entry["calibration"] = cal;
  }
  return ctx;
}

void flush(const ExperimentConfig& cfg, const Json& report, const std::string& csv) {
  if (!cfg.output.empty()) write_text_file(cfg.output, report.dump(2) + "\n");
  if (!cfg.csv.empty() && !csv.empty()) write_text_file(cfg.csv, csv);
}

template <typename Body>
ExperimentResult guarded(const ExperimentConfig& cfg, Body body) {
  ExperimentResult res;
  res.report = {{"status", "running"}, {"seed", cfg.seed}};
  try {
    body(res);
    res.report["status"] = "ok";
  } catch (const std::exception& e) {
    res.report["status"] = "failed";
    res.report["error"] = e.what();
    try {
      flush(cfg, res.report, res.csv);
    } catch (...) {
    }
    throw;
  }
  flush(cfg, res.report, res.csv);
  return res;
}

}  // namespace

ExperimentConfig parse_config(const Json& j, const std::string& base_dir) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  ExperimentConfig cfg;
  if (j.contains("circuits")) {
    for (const auto& c : j.at("circuits")) cfg.circuits.push_back(parse_circuit(c, base_dir));
  } else if (j.contains("circuit")) {
    cfg.circuits.push_back(parse_circuit(j.at("circuit"), base_dir));
  } else {
    throw ConfigError("config needs 'circuit' or 'circuits'");
  }
  if (cfg.circuits.empty()) throw ConfigError("config lists no circuits");

  if (j.contains("noise")) {
    const Json& n = j.at("noise");
    try {
      if (n.contains("synthetic")) {
        cfg.noise.total_error = get_or<double>(n.at("synthetic"), "total_error", 0.02);
        if (!(cfg.noise.total_error >= 0.0 && cfg.noise.total_error < 1.0)) {
          throw ConfigError("synthetic total_error must lie in [0, 1)");
        }
      } else if (n.contains("file")) {
        cfg.noise.model = noise_from_json(read_json_file(resolve_path(base_dir, n.at("file").get<std::string>())),
                                          cfg.circuits.front().circuit.n);
      } else if (n.contains("inline")) {
        cfg.noise.model = noise_from_json(n.at("inline"), cfg.circuits.front().circuit.n);
      } else {
        throw ConfigError("noise needs 'synthetic', 'file' or 'inline'");
      }
    } catch (const SchemaError& e) {
      throw ConfigError(std::string("noise: ") + e.what());
    }
  }
  if (j.contains("readout")) {
    const Json& r = j.at("readout");
    cfg.readout = ReadoutError{get_or<std::vector<double>>(r, "p10", {}), get_or<std::vector<double>>(r, "p01", {})};
  }
  cfg.methods = get_or<std::vector<std::string>>(j, "methods", cfg.methods);
  if (cfg.methods.empty()) throw ConfigError("methods must not be empty");
  for (const auto& m : cfg.methods) {
    if (std::find(kMethods.begin(), kMethods.end(), m) == kMethods.end()) {
      throw ConfigError("unknown method '" + m + "'");
    }
  }
  cfg.sigma = get_or<double>(j, "sigma", cfg.sigma);
  if (!(cfg.sigma > 0.0 && cfg.sigma < 1.0)) throw ConfigError("sigma must lie in (0, 1)");
  cfg.alpha = get_or<int>(j, "alpha", cfg.alpha);
  if (cfg.alpha < 2) throw ConfigError("alpha must be >= 2");
  cfg.id_insert = get_or<bool>(j, "id_insert", cfg.id_insert);
  if (cfg.id_insert && cfg.alpha % 2 == 0) throw ConfigError("identity insertion needs odd alpha");
  cfg.K = get_or<int>(j, "K", cfg.K);
  if (j.contains("cer")) {
    const Json& c = j.at("cer");
    cfg.cer.depths = get_or<std::vector<int>>(c, "depths", cfg.cer.depths);
    cfg.cer.shots = get_or<std::uint64_t>(c, "shots", cfg.cer.shots);
    cfg.cer.mode = get_or<std::string>(c, "mode", cfg.cer.mode);
    if (cfg.cer.mode != "auto" && cfg.cer.mode != "exhaustive" && cfg.cer.mode != "truncated" &&
        cfg.cer.mode != "exact") {
      throw ConfigError("cer.mode must be auto, exhaustive, truncated or exact");
    }
    if (cfg.cer.shots == 0) throw ConfigError("cer.shots must be positive");
    for (int d : cfg.cer.depths) {
      if (d < 2) throw ConfigError("cer.depths must be >= 2");
    }
  }
  cfg.rcal_shots = get_or<std::uint64_t>(j, "rcal_shots", cfg.rcal_shots);
  cfg.repetitions = get_or<int>(j, "repetitions", cfg.repetitions);
  if (cfg.repetitions < 1) throw ConfigError("repetitions must be >= 1");
  cfg.seed = get_or<std::uint64_t>(j, "seed", cfg.seed);
  cfg.output = output_path(base_dir, get_or<std::string>(j, "output", cfg.output));
  cfg.csv = output_path(base_dir, get_or<std::string>(j, "csv", cfg.csv));
  cfg.jobs = get_or<int>(j, "jobs", cfg.jobs);
  if (cfg.jobs < 1) throw ConfigError("jobs must be >= 1");
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  Json j;
  try {
    j = read_json_file(path);
  } catch (const SchemaError& e) {
    throw ConfigError(e.what());
  }
  return parse_config(j, fs::path(path).parent_path().string().empty() ? "." : fs::path(path).parent_path().string());
}

NoiseModel resolve_noise(const ExperimentConfig& cfg, const CircuitSpec& spec) {
  NoiseModel m = cfg.noise.model ? *cfg.noise.model : synthetic_noise(spec.circuit, cfg.noise.total_error);
  if (m.num_qubits() != spec.circuit.n) throw ConfigError("noise model width differs from circuit '" + spec.tag + "'");
  for (int j = 0; j < spec.circuit.num_hard(); ++j) {
    if (!m.find(spec.circuit.hard(j))) {
      throw ConfigError("noise model has no entry for cycle " + spec.circuit.hard(j).signature());
    }
  }
  if (cfg.readout) {
    if (cfg.readout->p10.size() != static_cast<std::size_t>(spec.circuit.n) ||
        cfg.readout->p01.size() != static_cast<std::size_t>(spec.circuit.n)) {
      throw ConfigError("readout flip lists must have one entry per qubit");
    }
    m.readout = cfg.readout;
  }
  return m;
}

ReportSet characterize_circuit(const ExperimentConfig& cfg, const CircuitSpec& spec, const NoiseModel& noise) {
  const int n = spec.circuit.n;
  std::string mode = cfg.cer.mode;
  if (mode == "auto") mode = n <= 3 ? "exhaustive" : "truncated";
  if (mode == "exhaustive" && n > 3) throw ConfigError("exhaustive CER supports n <= 3");
  const int K = cfg.K >= 0 ? std::min(cfg.K, n) : (mode == "truncated" ? std::min(2, n) : n);
  ReportSet out;
  for (const auto& h : distinct_hard_cycles(spec.circuit)) {
    std::vector<DecayCurve> curves;
    if (mode == "exact") {
      curves = analytic_curves(effective_pauli_channel(h, noise.at(h)), mode == "truncated" ? K : -1);
    } else {
      BenchmarkOptions opts;
      opts.depths = cfg.cer.depths;
      opts.shots_per_point = cfg.cer.shots;
      opts.seed = derive_seed(cfg.seed, "cer/" + spec.tag + "/" + h.signature());
      opts.max_weight = mode == "truncated" ? K : -1;
      opts.jobs = cfg.jobs;
      curves = benchmark_cycle(h, noise, opts);
    }
    CERReport r = reconstruct_rates(curves, K, n);
    r.cycle = h;
    out[h.signature()] = r;
  }
  return out;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  return guarded(cfg, [&](ExperimentResult& res) {
    res.report["sigma"] = cfg.sigma;
    res.report["alpha"] = cfg.alpha;
    res.report["id_insert"] = cfg.id_insert;
    res.report["repetitions"] = cfg.repetitions;
    res.report["methods"] = cfg.methods;
    res.report["circuits"] = Json::array();
    res.csv = "circuit,method,rep,obs,vd,est,stderr\n";
    for (const auto& spec : cfg.circuits) {
      Json entry = Json::object();
      const CircuitContext ctx = prepare(cfg, spec, entry);
      const std::size_t methods = cfg.methods.size();
      const std::size_t tasks = methods * static_cast<std::size_t>(cfg.repetitions);
      std::vector<MethodRun> runs(tasks);
      parallel_for(tasks, cfg.jobs, [&](std::size_t i) {
        const int rep = static_cast<int>(i / methods);
        const std::string& method = cfg.methods[i % methods];
        const std::uint64_t seed =
            derive_seed(cfg.seed, "rep/" + std::to_string(rep) + "/" + method + "/" + spec.tag);
        runs[i] = run_method(cfg, ctx, method, cfg.sigma, seed);
      });

      std::optional<double> none_mean;
      Json results = Json::array();
      for (std::size_t mi = 0; mi < methods; ++mi) {
        const std::string& method = cfg.methods[mi];
        std::vector<double> vds;
        std::vector<double> mean_dist(ctx.ideal.size(), 0.0);
        Json reps = Json::array();
        for (int rep = 0; rep < cfg.repetitions; ++rep) {
          const MethodRun& r = runs[static_cast<std::size_t>(rep) * methods + mi];
          vds.push_back(r.vd);
          for (std::size_t s = 0; s < mean_dist.size(); ++s) mean_dist[s] += r.distribution[s] / cfg.repetitions;
          reps.push_back({{"rep", rep},
                          {"vd", r.vd},
                          {"clip_delta", r.clip_delta},
                          {"estimate", estimate_to_json(r.estimate, r.distribution, ctx.k)}});
          for (const auto& o : ctx.obs) {
            const auto& v = r.estimate.values.at(o.label);
            res.csv += spec.tag + "," + method + "," + std::to_string(rep) + "," + o.label + "," +
                       format_double(r.vd) + "," + format_double(v.est) + "," + format_double(v.stderr) + "\n";
          }
        }
        const double mean = mean_of(vds);
        if (method == "none") none_mean = mean;
        Json out = {{"circuit", spec.tag},
                    {"method", method},
                    {"vd", mean},
                    {"vd_std", std_of(vds)},
                    {"vd_stderr", std_of(vds) / std::sqrt(static_cast<double>(vds.size()))}};
        if (spec.qpe_t > 0) {
          const auto ideal_q = qpe_decode(ctx.ideal, spec.qpe_t);
          const auto est_q = qpe_decode(mean_dist, spec.qpe_t);
          Json decoded = Json::object(), ideal = Json::object();
          for (std::size_t p = 0; p < est_q.size(); ++p) {
            decoded[kappa_label(static_cast<int>(p), spec.qpe_t)] = est_q[p];
            ideal[kappa_label(static_cast<int>(p), spec.qpe_t)] = ideal_q[p];
          }
          out["qpe"] = {{"kappa", spec.kappa},
                        {"decoded", decoded},
                        {"ideal", ideal},
                        {"vd_qpe", variation_distance(clip_and_renormalize(est_q).probs, ideal_q)}};
        }
        out["repetitions"] = reps;
        results.push_back(out);
      }
      if (none_mean && *none_mean > 0.0) {
        for (auto& r : results) r["improvement"] = improvement(r["vd"].get<double>(), *none_mean);
      }
      entry["results"] = results;
      res.report["circuits"].push_back(entry);
    }
  });
}

ExperimentResult sigma_sweep(const ExperimentConfig& cfg, const std::vector<double>& sigmas) {
  if (sigmas.empty()) throw ConfigError("sweep needs at least one sigma");
  for (double s : sigmas) {
    if (!(s > 0.0 && s < 1.0)) throw ConfigError("sweep sigmas must lie in (0, 1)");
  }
  std::string method;
  for (const auto& m : cfg.methods) {
    if (method.empty() && (m.rfind("nox", 0) == 0 || m.rfind("pec", 0) == 0)) method = m;
  }
  if (method.empty()) throw ConfigError("sweep needs a pec or nox method");
  return guarded(cfg, [&](ExperimentResult& res) {
    res.report["method"] = method;
    res.report["repetitions"] = cfg.repetitions;
    res.report["rows"] = Json::array();
    res.csv = "circuit,method,sigma,std,std_over_sigma,mean_vd\n";
    ExperimentConfig inner = cfg;
    inner.methods = {method};
    for (const auto& spec : cfg.circuits) {
      Json entry = Json::object();
      const CircuitContext ctx = prepare(inner, spec, entry);
      const std::size_t reps = static_cast<std::size_t>(cfg.repetitions);
      std::vector<MethodRun> runs(sigmas.size() * reps);
      parallel_for(runs.size(), cfg.jobs, [&](std::size_t i) {
        const std::size_t si = i / reps;
        const std::uint64_t seed = derive_seed(cfg.seed, "sweep/" + std::to_string(si) + "/rep/" +
                                                             std::to_string(i % reps) + "/" + spec.tag);
        runs[i] = run_method(inner, ctx, method, sigmas[si], seed);
      });
      for (std::size_t si = 0; si < sigmas.size(); ++si) {
        double worst = 0.0;
        std::vector<double> vds;
        for (const auto& o : ctx.obs) {
          std::vector<double> ests;
          for (std::size_t r = 0; r < reps; ++r) ests.push_back(runs[si * reps + r].estimate.values.at(o.label).est);
          worst = std::max(worst, std_of(ests));
        }
        for (std::size_t r = 0; r < reps; ++r) vds.push_back(runs[si * reps + r].vd);
        res.report["rows"].push_back({{"circuit", spec.tag},
                                      {"sigma", sigmas[si]},
                                      {"std", worst},
                                      {"std_over_sigma", worst / sigmas[si]},
                                      {"mean_vd", mean_of(vds)}});
        res.csv += spec.tag + "," + method + "," + format_double(sigmas[si]) + "," + format_double(worst) + "," +
                   format_double(worst / sigmas[si]) + "," + format_double(mean_of(vds)) + "\n";
      }
    }
  });
}

ExperimentResult characterize(const ExperimentConfig& cfg) {
  return guarded(cfg, [&](ExperimentResult& res) {
    res.report["reports"] = Json::array();
    for (const auto& spec : cfg.circuits) {
      const NoiseModel noise = resolve_noise(cfg, spec);
      for (const auto& [sig, r] : characterize_circuit(cfg, spec, noise)) {
        Json j = report_to_json(r);
        j["circuit"] = spec.tag;
        res.report["reports"].push_back(j);
      }
    }
  });
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ConfigError*>(&e) || dynamic_cast<const SchemaError*>(&e)) return 2;
  if (dynamic_cast<const InfeasiblePlan*>(&e)) return 3;
  return 4;
}

}  // namespace qem
