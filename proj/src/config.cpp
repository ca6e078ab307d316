// Copyright 2026 The graphcode Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdio>
#include <fstream>
#include <sstream>

#include "graphcode/runner.hpp"
#include "report_util.hpp"

namespace graphcode {

namespace {

using nlohmann::json;

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) out += (out.empty() ? "" : "; ") + s;
  return out;
}

// Collects problems while walking a JSON document so one run reports all of them.
class Reader {
 public:
  std::vector<std::string> problems;

  void unknown_keys(const json& obj, const std::string& where, std::initializer_list<const char*> allowed) {
    for (const auto& [key, _] : obj.items()) {
      bool ok = false;
      for (const char* a : allowed) ok = ok || key == a;
      if (!ok) problems.push_back(where + key + ": unknown key");
    }
  }

  bool object(const json& j, const std::string& path) {
    if (j.is_object()) return true;
    problems.push_back(path + ": expected an object");
    return false;
  }

  template <typename T>
  void number(const json& obj, const char* key, const std::string& path, T& out) {
    if (!obj.contains(key)) return;
    const json& v = obj.at(key);
    if (!v.is_number()) {
      problems.push_back(path + ": expected a number");
      return;
    }
    if constexpr (std::is_integral_v<T>) {
      if (!v.is_number_integer()) {
        problems.push_back(path + ": expected an integer");
        return;
      }
      if constexpr (std::is_unsigned_v<T>) {
        if (v.is_number_unsigned()) {
          out = v.get<T>();
        } else if (v.get<long long>() < 0) {
          problems.push_back(path + ": must be non-negative");
        } else {
          out = static_cast<T>(v.get<long long>());
        }
      } else {
        out = static_cast<T>(v.get<long long>());
      }
    } else {
      out = v.get<T>();
    }
  }

  void boolean(const json& obj, const char* key, const std::string& path, bool& out) {
    if (!obj.contains(key)) return;
    if (!obj.at(key).is_boolean()) {
      problems.push_back(path + ": expected true or false");
      return;
    }
    out = obj.at(key).get<bool>();
  }

  std::optional<std::string> string(const json& obj, const char* key, const std::string& path) {
    if (!obj.contains(key)) return std::nullopt;
    if (!obj.at(key).is_string()) {
      problems.push_back(path + ": expected a string");
      return std::nullopt;
    }
    return obj.at(key).get<std::string>();
  }

  std::optional<std::vector<std::string>> strings(const json& obj, const char* key, const std::string& path) {
    if (!obj.contains(key)) return std::nullopt;
    const json& v = obj.at(key);
    if (v.is_string()) return std::vector<std::string>{v.get<std::string>()};
    if (!v.is_array()) {
      problems.push_back(path + ": expected a string or a list of strings");
      return std::nullopt;
    }
    std::vector<std::string> out;
    for (const auto& e : v) {
      if (!e.is_string()) {
        problems.push_back(path + ": expected a list of strings");
        return std::nullopt;
      }
      out.push_back(e.get<std::string>());
    }
    return out;
  }

  // Runs `parse`, turning any exception into a problem at `path`.
  template <typename F>
  void guard(const std::string& path, F&& parse) {
    try {
      parse();
    } catch (const std::exception& e) {
      problems.push_back(path + ": " + e.what());
    }
  }

  void per_qubit(const json& obj, const char* key, const std::string& path, std::map<Label, double>& out) {
    if (!obj.contains(key)) return;
    const json& v = obj.at(key);
    if (!v.is_object()) {
      problems.push_back(path + ": expected an object of qubit -> probability");
      return;
    }
    for (const auto& [q, p] : v.items()) {
      int label = 0;
      if (std::sscanf(q.c_str(), "%d", &label) != 1 || std::to_string(label) != q) {
        problems.push_back(path + "." + q + ": qubit label must be an integer");
        continue;
      }
      if (!p.is_number()) {
        problems.push_back(path + "." + q + ": expected a number");
        continue;
      }
      out[label] = p.get<double>();
    }
  }
};

void parse_noise(Reader& r, const json& j, NoiseModel& noise) {
  if (!r.object(j, "noise")) return;
  r.unknown_keys(j, "noise.", {"visibility", "depolarizing", "dephasing", "apply"});
  r.number(j, "visibility", "noise.visibility", noise.visibility);
  r.per_qubit(j, "depolarizing", "noise.depolarizing", noise.depolarizing);
  r.per_qubit(j, "dephasing", "noise.dephasing", noise.dephasing);
  if (auto s = r.string(j, "apply", "noise.apply")) r.guard("noise.apply", [&] { noise.point = parse_point(*s); });
}

void parse_sampling(Reader& r, const json& j, SamplingConfig& s) {
  if (!r.object(j, "sampling")) return;
  r.unknown_keys(j, "sampling.", {"enabled", "counts_per_setting", "trials", "seed", "threads"});
  r.boolean(j, "enabled", "sampling.enabled", s.enabled);
  r.number(j, "counts_per_setting", "sampling.counts_per_setting", s.counts_per_setting);
  r.number(j, "trials", "sampling.trials", s.trials);
  r.number(j, "seed", "sampling.seed", s.seed);
  r.number(j, "threads", "sampling.threads", s.threads);
}

void parse_graph(Reader& r, const json& j, ExperimentConfig& c) {
  if (!r.object(j, "graph")) return;
  r.unknown_keys(j, "graph.", {"vertices", "edges"});
  if (!j.contains("vertices") || !j.at("vertices").is_array()) {
    r.problems.push_back("graph.vertices: expected a list of integers");
    return;
  }
  r.guard("graph", [&] {
    std::set<Label> vertices;
    for (const auto& v : j.at("vertices")) vertices.insert(v.get<Label>());
    std::vector<Edge> edges;
    if (j.contains("edges")) {
      for (const auto& e : j.at("edges")) {
        if (!e.is_array() || e.size() != 2) throw std::invalid_argument("each edge must be a pair [a, b]");
        edges.emplace_back(e[0].get<Label>(), e[1].get<Label>());
      }
    }
    c.graph = Graph(vertices, edges);
  });
}

}  // namespace

std::string kind_name(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::resource_witness:
      return "resource-witness";
    case ExperimentKind::encode_tomography:
      return "encode-tomography";
    case ExperimentKind::encode_channel:
      return "encode-channel";
    case ExperimentKind::loss_recovery:
      return "loss-recovery";
    case ExperimentKind::syndrome_table:
      return "syndrome-table";
    case ExperimentKind::noise_sweep:
      return "noise-sweep";
  }
  return "?";
}

ExperimentKind parse_kind(std::string_view name) {
  for (auto k : {ExperimentKind::resource_witness, ExperimentKind::encode_tomography, ExperimentKind::encode_channel,
                 ExperimentKind::loss_recovery, ExperimentKind::syndrome_table, ExperimentKind::noise_sweep}) {
    if (kind_name(k) == name) return k;
  }
  throw std::invalid_argument("unknown experiment kind '" + std::string(name) + "'");
}

ConfigError::ConfigError(std::vector<std::string> problems)
    : std::runtime_error("invalid config: " + join(problems)), problems_(std::move(problems)) {}

ExperimentConfig parse_config(const json& j) {
  Reader r;
  ExperimentConfig c;
  if (!j.is_object()) throw ConfigError({"config: expected a JSON object"});
  r.unknown_keys(j, "", {"kind", "noise", "probes", "errors", "lost", "witnesses", "witness_variant", "encode", "graph",
                         "sweep", "sampling", "output"});

  if (auto s = r.string(j, "kind", "kind")) {
    r.guard("kind", [&] { c.kind = parse_kind(*s); });
  } else if (!j.contains("kind")) {
    r.problems.push_back("kind: required");
  }
  if (j.contains("noise")) parse_noise(r, j.at("noise"), c.noise);
  if (auto v = r.strings(j, "probes", "probes")) {
    c.probes.clear();
    for (const auto& p : *v) r.guard("probes", [&] { c.probes.push_back(parse_probe(p)); });
  }
  if (auto v = r.strings(j, "errors", "errors")) {
    c.errors.clear();
    for (const auto& e : *v) r.guard("errors", [&] { c.errors.push_back(parse_error(e)); });
  }
  if (j.contains("lost")) {
    const json& v = j.at("lost");
    c.lost.clear();
    if (v.is_number_integer()) {
      c.lost.push_back(v.get<Label>());
    } else if (v.is_array() && std::all_of(v.begin(), v.end(), [](const json& e) { return e.is_number_integer(); })) {
      for (const auto& e : v) c.lost.push_back(e.get<Label>());
    } else {
      r.problems.push_back("lost: expected an integer or a list of integers");
    }
  }
  if (auto v = r.strings(j, "witnesses", "witnesses")) c.witnesses = *v;
  if (auto s = r.string(j, "witness_variant", "witness_variant")) {
    r.guard("witness_variant", [&] { c.witness_variant = parse_variant(*s); });
  }
  if (j.contains("encode") && r.object(j.at("encode"), "encode")) {
    const json& e = j.at("encode");
    r.unknown_keys(e, "encode.", {"s3", "correct_byproduct"});
    r.number(e, "s3", "encode.s3", c.s3);
    r.boolean(e, "correct_byproduct", "encode.correct_byproduct", c.correct_byproduct);
  }
  if (j.contains("graph")) parse_graph(r, j.at("graph"), c);
  if (j.contains("sweep") && r.object(j.at("sweep"), "sweep")) {
    const json& s = j.at("sweep");
    r.unknown_keys(s, "sweep.", {"visibilities", "fidelity_target"});
    if (s.contains("visibilities")) {
      const json& v = s.at("visibilities");
      if (v.is_array() && std::all_of(v.begin(), v.end(), [](const json& e) { return e.is_number(); })) {
        c.visibilities = v.get<std::vector<double>>();
      } else {
        r.problems.push_back("sweep.visibilities: expected a list of numbers");
      }
    }
    r.number(s, "fidelity_target", "sweep.fidelity_target", c.fidelity_target);
  }
  if (j.contains("sampling")) parse_sampling(r, j.at("sampling"), c.sampling);
  if (j.contains("output") && r.object(j.at("output"), "output")) {
    const json& o = j.at("output");
    r.unknown_keys(o, "output.", {"dir", "formats"});
    if (auto d = r.string(o, "dir", "output.dir")) c.out_dir = *d;
    if (auto f = r.strings(o, "formats", "output.formats")) c.formats = {f->begin(), f->end()};
  }

  if (!r.problems.empty()) throw ConfigError(r.problems);
  validate_config(c);
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError({"config: cannot open " + path.string()});
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ConfigError({"config: " + path.string() + " is not valid JSON (" + e.what() + ")"});
  }
  return parse_config(j);
}

void validate_config(const ExperimentConfig& c) {
  std::vector<std::string> problems;
  auto prob = [](double p) { return p >= 0.0 && p <= 1.0; };
  if (!prob(c.noise.visibility)) problems.push_back("noise.visibility: must lie in [0, 1]");
  for (const auto& [q, p] : c.noise.depolarizing) {
    if (!prob(p)) problems.push_back("noise.depolarizing." + std::to_string(q) + ": must lie in [0, 1]");
  }
  for (const auto& [q, p] : c.noise.dephasing) {
    if (!prob(p)) problems.push_back("noise.dephasing." + std::to_string(q) + ": must lie in [0, 1]");
  }
  if (c.probes.empty()) problems.push_back("probes: at least one probe is required");
  for (Label q : c.lost) {
    if (std::find(kCodeLabels.begin(), kCodeLabels.end(), q) == kCodeLabels.end()) {
      problems.push_back("lost: " + std::to_string(q) + " is not a code qubit (1, 2, 4 or 5)");
    }
  }
  if (c.kind == ExperimentKind::loss_recovery && c.lost.empty()) problems.push_back("lost: required for loss-recovery");
  for (const auto& e : c.errors) {
    if (e.weight() > 1 || (e.weight() == 1 && std::find(kCodeLabels.begin(), kCodeLabels.end(),
                                                        e.letters().begin()->first) == kCodeLabels.end())) {
      problems.push_back("errors: " + error_name(e) + " is not a single-qubit error on a code qubit");
    }
  }
  static const std::set<std::string> known{"resource5", "box4", "ghz4", "pair2"};
  if (c.kind == ExperimentKind::resource_witness && c.witnesses.empty()) {
    problems.push_back("witnesses: at least one witness is required");
  }
  for (const auto& w : c.witnesses) {
    if (!known.count(w)) problems.push_back("witnesses: unknown witness '" + w + "'");
  }
  if (c.s3 != 0 && c.s3 != 1) problems.push_back("encode.s3: must be 0 or 1");
  if (c.graph) {
    if (c.graph->vertices().empty() || c.graph->vertices().size() > static_cast<std::size_t>(kMaxQubits)) {
      problems.push_back("graph.vertices: between 1 and 6 vertices");
    }
    if (c.kind == ExperimentKind::resource_witness && c.graph->vertices() != std::set<Label>{1, 2, 3, 4, 5}) {
      problems.push_back("graph.vertices: the resource graph must use vertices 1..5");
    }
  }
  if (c.kind == ExperimentKind::noise_sweep && c.visibilities.empty()) {
    problems.push_back("sweep.visibilities: at least one value is required");
  }
  for (double v : c.visibilities) {
    if (!prob(v)) {
      problems.push_back("sweep.visibilities: values must lie in [0, 1]");
      break;
    }
  }
  if (!(c.fidelity_target > 0.0 && c.fidelity_target < 1.0)) {
    problems.push_back("sweep.fidelity_target: must lie in (0, 1)");
  }
  if (!(c.sampling.counts_per_setting > 0.0)) problems.push_back("sampling.counts_per_setting: must be positive");
  if (c.sampling.trials < 100) problems.push_back("sampling.trials: at least 100");
  if (c.sampling.threads < 1) problems.push_back("sampling.threads: at least 1");
  for (const auto& f : c.formats) {
    if (f != "json" && f != "csv" && f != "svg") problems.push_back("output.formats: unknown format '" + f + "'");
  }
  if (!problems.empty()) throw ConfigError(problems);
}

json config_to_json(const ExperimentConfig& c) {
  json noise{{"visibility", report::clean(c.noise.visibility)}, {"apply", point_name(c.noise.point)}};
  json dep = json::object(), deph = json::object();
  for (const auto& [q, p] : c.noise.depolarizing) dep[std::to_string(q)] = report::clean(p);
  for (const auto& [q, p] : c.noise.dephasing) deph[std::to_string(q)] = report::clean(p);
  noise["depolarizing"] = dep;
  noise["dephasing"] = deph;

  json probes = json::array(), errors = json::array(), visibilities = json::array();
  for (Probe p : c.probes) probes.push_back(probe_name(p));
  for (const auto& e : c.errors) errors.push_back(error_name(e));
  for (double v : c.visibilities) visibilities.push_back(report::clean(v));

  json out{{"kind", kind_name(c.kind)},
           {"noise", noise},
           {"probes", probes},
           {"errors", errors},
           {"lost", c.lost},
           {"witnesses", c.witnesses},
           {"witness_variant", variant_name(c.witness_variant)},
           {"encode", {{"s3", c.s3}, {"correct_byproduct", c.correct_byproduct}}},
           {"sweep", {{"visibilities", visibilities}, {"fidelity_target", report::clean(c.fidelity_target)}}},
           {"sampling",
            {{"enabled", c.sampling.enabled},
             {"counts_per_setting", report::clean(c.sampling.counts_per_setting)},
             {"trials", c.sampling.trials},
             {"seed", c.sampling.seed},
             {"threads", c.sampling.threads}}},
           {"output", {{"dir", c.out_dir}, {"formats", c.formats}}}};
  if (c.graph) {
    json edges = json::array();
    for (const auto& [a, b] : c.graph->edges()) edges.push_back({a, b});
    out["graph"] = {{"vertices", c.graph->vertex_list()}, {"edges", edges}};
  }
  return out;
}

std::string fnv1a_hex(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : data) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace graphcode
