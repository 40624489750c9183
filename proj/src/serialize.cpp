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

#include "qem/serialize.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "qem/gates.hpp"
#include "qem/metrics.hpp"

namespace qem {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw SchemaError(std::string("missing field '") + key + "'");
  return j.at(key);
}

template <typename T>
T get_as(const Json& j, const char* key) {
  try {
    return field(j, key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("field '") + key + "': " + e.what());
  }
}

Json complex_list(const Eigen::MatrixXcd& m) {
  Json arr = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) arr.push_back({m(r, c).real(), m(r, c).imag()});
  }
  return arr;
}

Eigen::MatrixXcd complex_matrix(const Json& arr, Eigen::Index dim) {
  if (!arr.is_array() || static_cast<Eigen::Index>(arr.size()) != dim * dim) {
    throw SchemaError("matrix must list " + std::to_string(dim * dim) + " [re, im] entries");
  }
  Eigen::MatrixXcd m(dim, dim);
  for (Eigen::Index i = 0; i < dim * dim; ++i) {
    const Json& e = arr.at(static_cast<std::size_t>(i));
    if (!e.is_array() || e.size() != 2) throw SchemaError("matrix entries must be [re, im]");
    m(i / dim, i % dim) = {e.at(0).get<double>(), e.at(1).get<double>()};
  }
  return m;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

Json hard_cycle_to_json(const HardCycle& h) {
  Json gates = Json::array();
  for (const auto& g : h.gates) gates.push_back({{"q0", g.q0}, {"q1", g.q1}, {"kind", to_string(g.kind)}});
  return {{"gates", gates}};
}

HardCycle hard_cycle_from_json(const Json& j, int n) {
  HardCycle h;
  h.n = n;
  for (const auto& g : field(j, "gates")) {
    try {
      h.gates.push_back({get_as<int>(g, "q0"), get_as<int>(g, "q1"), parse_gate_kind(get_as<std::string>(g, "kind"))});
    } catch (const SchemaError&) {
      throw;
    } catch (const std::invalid_argument& e) {
      throw SchemaError(e.what());
    }
  }
  return h;
}

Json circuit_to_json(const Circuit& c) {
  Json cycles = Json::array();
  for (const auto& cyc : c.cycles) {
    if (const auto* e = std::get_if<EasyCycle>(&cyc)) {
      Json gates = Json::array();
      for (int q = 0; q < e->num_qubits(); ++q) {
        const EasyGate& g = e->gates[q];
        if (g.is_identity()) continue;
        if (g.is_explicit()) {
          gates.push_back({{"q", q}, {"matrix", complex_list(g.matrix)}});
        } else {
          gates.push_back({{"q", q}, {"name", g.name}, {"params", g.params}});
        }
      }
      cycles.push_back({{"type", "easy"}, {"gates", gates}});
    } else {
      Json h = hard_cycle_to_json(std::get<HardCycle>(cyc));
      cycles.push_back({{"type", "hard"}, {"gates", h["gates"]}});
    }
  }
  return {{"n", c.n}, {"cycles", cycles}, {"measure", c.measured}};
}

Circuit circuit_from_json(const Json& j) {
  Circuit c;
  c.n = get_as<int>(j, "n");
  if (c.n < 1 || c.n > 62) throw SchemaError("field 'n' out of range");
  for (const auto& cyc : field(j, "cycles")) {
    const std::string type = get_as<std::string>(cyc, "type");
    if (type == "easy") {
      EasyCycle e = EasyCycle::identity(c.n);
      for (const auto& g : field(cyc, "gates")) {
        const int q = get_as<int>(g, "q");
        if (q < 0 || q >= c.n) throw SchemaError("easy gate qubit out of range");
        if (g.contains("matrix")) {
          e.gates[q] = EasyGate::from_matrix(complex_matrix(g.at("matrix"), 2));
        } else {
          std::vector<double> params;
          if (g.contains("params")) params = g.at("params").get<std::vector<double>>();
          try {
            e.gates[q] = EasyGate::named(get_as<std::string>(g, "name"), params);
          } catch (const SchemaError&) {
            throw;
          } catch (const std::invalid_argument& ex) {
            throw SchemaError(ex.what());
          }
        }
      }
      c.cycles.emplace_back(std::move(e));
    } else if (type == "hard") {
      c.cycles.emplace_back(hard_cycle_from_json(cyc, c.n));
    } else {
      throw SchemaError("cycle type must be 'easy' or 'hard'");
    }
  }
  if (j.contains("measure")) {
    c.measured = j.at("measure").get<std::vector<int>>();
  } else {
    for (int q = 0; q < c.n; ++q) c.measured.push_back(q);
  }
  return c;
}

Json channel_to_json(const PauliChannel& ch) {
  Json rates = Json::object();
  for (const auto& [p, r] : ch.rates()) rates[p.str()] = r;
  return rates;
}

PauliChannel channel_from_json(const Json& rates, int n) {
  if (!rates.is_object()) throw SchemaError("'rates' must be an object");
  std::map<PauliString, double> m;
  try {
    for (const auto& [label, r] : rates.items()) {
      const PauliString p = PauliString::parse(label);
      if (p.num_qubits() != n) throw SchemaError("rate label '" + label + "' has the wrong length");
      m[p] = r.get<double>();
    }
    return PauliChannel::from_rates(n, m);
  } catch (const SchemaError&) {
    throw;
  } catch (const std::exception& e) {
    throw SchemaError(e.what());
  }
}

Json noise_to_json(const NoiseModel& m) {
  Json cycles = Json::array();
  for (const auto& [sig, entry] : m.entries()) {
    Json noise;
    if (const auto* ch = std::get_if<PauliChannel>(&entry.noise)) {
      noise = {{"type", "pauli"}, {"rates", channel_to_json(*ch)}};
    } else {
      const auto& co = std::get<CoherentNoise>(entry.noise);
      noise = {{"type", "coherent"}, {"qubits", co.qubits}, {"matrix", complex_list(co.unitary)}};
    }
    cycles.push_back({{"signature", hard_cycle_to_json(entry.cycle)}, {"noise", noise}});
  }
  Json j = {{"n", m.num_qubits()}, {"cycles", cycles}};
  if (m.readout) j["readout"] = {{"p10", m.readout->p10}, {"p01", m.readout->p01}};
  return j;
}

NoiseModel noise_from_json(const Json& j, int n_hint) {
  int n = j.contains("n") ? j.at("n").get<int>() : n_hint;
  if (n <= 0) {
    for (const auto& e : field(j, "cycles")) {
      const Json& noise = field(e, "noise");
      if (noise.contains("rates")) {
        for (const auto& [label, r] : noise.at("rates").items()) n = static_cast<int>(label.size());
      }
    }
  }
  if (n <= 0) throw SchemaError("noise model needs 'n' or a Pauli rate to fix the qubit count");
  NoiseModel m(n);
  for (const auto& e : field(j, "cycles")) {
    const HardCycle h = hard_cycle_from_json(field(e, "signature"), n);
    const Json& noise = field(e, "noise");
    const std::string type = get_as<std::string>(noise, "type");
    try {
      if (type == "pauli") {
        m.set(h, channel_from_json(field(noise, "rates"), n));
      } else if (type == "coherent") {
        CoherentNoise co;
        co.qubits = get_as<std::vector<int>>(noise, "qubits");
        co.unitary = complex_matrix(field(noise, "matrix"), Eigen::Index{1} << co.qubits.size());
        if (unitarity_defect(co.unitary) > 1e-10) throw SchemaError("coherent noise matrix is not unitary");
        m.set(h, co);
      } else {
        throw SchemaError("noise type must be 'pauli' or 'coherent'");
      }
    } catch (const SchemaError&) {
      throw;
    } catch (const std::invalid_argument& ex) {
      throw SchemaError(ex.what());
    }
  }
  if (j.contains("readout")) {
    ReadoutError ro{get_as<std::vector<double>>(j.at("readout"), "p10"),
                    get_as<std::vector<double>>(j.at("readout"), "p01")};
    if (ro.p10.size() != static_cast<std::size_t>(n) || ro.p01.size() != static_cast<std::size_t>(n)) {
      throw SchemaError("readout flip lists must have one entry per qubit");
    }
    m.readout = ro;
  }
  return m;
}

Json shots_to_json(const ShotRecord& r) {
  Json counts = Json::object();
  for (const auto& [bits, c] : r.counts) counts[bits] = c;
  return {{"shots", r.total_shots}, {"seed", r.seed}, {"counts", counts}};
}

ShotRecord shots_from_json(const Json& j) {
  ShotRecord r;
  r.total_shots = get_as<std::uint64_t>(j, "shots");
  r.seed = get_as<std::uint64_t>(j, "seed");
  std::uint64_t sum = 0;
  for (const auto& [bits, c] : field(j, "counts").items()) {
    r.counts[bits] = c.get<std::uint64_t>();
    sum += r.counts[bits];
  }
  if (sum != r.total_shots) throw SchemaError("counts do not sum to 'shots'");
  return r;
}

Json report_to_json(const CERReport& r) {
  Json rates = Json::object();
  for (const auto& [p, e] : r.rates) rates[p.str()] = {{"est", e.est}, {"stderr", e.stderr}};
  return {{"n", r.cycle.n},         {"signature", hard_cycle_to_json(r.cycle)},
          {"K", r.K},               {"rates", rates},
          {"residual_mass", r.residual_mass}, {"beta", r.beta}};
}

CERReport report_from_json(const Json& j) {
  CERReport r;
  const int n = get_as<int>(j, "n");
  r.cycle = hard_cycle_from_json(field(j, "signature"), n);
  r.K = get_as<int>(j, "K");
  for (const auto& [label, e] : field(j, "rates").items()) {
    r.rates[PauliString::parse(label)] = {get_as<double>(e, "est"), get_as<double>(e, "stderr")};
  }
  r.residual_mass = get_as<double>(j, "residual_mass");
  r.beta = get_as<double>(j, "beta");
  return r;
}

Json estimate_to_json(const Estimate& e, const std::optional<std::vector<double>>& distribution, int k) {
  Json j = {{"method", e.method}, {"sigma", e.sigma}};
  if (e.c_tot) j["c_tot"] = *e.c_tot;
  if (e.alpha) j["alpha"] = *e.alpha;
  Json values = Json::object();
  for (const auto& [label, v] : e.values) values[label] = {{"est", v.est}, {"stderr", v.stderr}};
  j["values"] = values;
  if (distribution) j["distribution"] = to_distribution(*distribution, k);
  j["shots_used"] = e.shots_used;
  j["out_of_range"] = e.out_of_range;
  return j;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError("'" + path + "' is not valid JSON: " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
}

}  // namespace qem
