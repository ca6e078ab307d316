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
#include <iostream>

#include <CLI11.hpp>

#include "graphcode/runner.hpp"
#include "report_util.hpp"

namespace graphcode {

namespace {

using nlohmann::json;

struct Options {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::vector<std::string> formats;
  std::optional<double> visibility;
  std::optional<int> trials;
  std::optional<int> threads;
  std::optional<double> counts;
  bool ideal = false;
  std::vector<std::string> probes;
  std::vector<std::string> errors;
  std::vector<int> lost;
  std::vector<std::string> witnesses;
  std::string variant;
  std::optional<int> s3;
  bool keep_byproduct = false;
  std::optional<double> target;
  std::string input;
  std::vector<int> qubits;
};

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--config", o.config, "JSON experiment config")->check(CLI::ExistingFile);
  sub->add_option("--seed", o.seed, "sampling seed");
  sub->add_option("--out", o.out, "output directory");
  sub->add_option("--format", o.formats, "json, csv or svg (repeatable)")
      ->check(CLI::IsMember({"json", "csv", "svg"}));
  sub->add_option("--visibility", o.visibility, "white-noise visibility")->check(CLI::Range(0.0, 1.0));
  sub->add_option("--trials", o.trials, "Monte Carlo trials");
  sub->add_option("--threads", o.threads, "Monte Carlo threads");
  sub->add_option("--counts", o.counts, "expected counts per setting");
  sub->add_flag("--ideal", o.ideal, "noiseless state, no count sampling");
}

// Builds the config: file first, then the subcommand's kind, then flags.
ExperimentConfig make_config(ExperimentKind kind, const Options& o) {
  json j = json::object();
  if (!o.config.empty()) {
    std::ifstream in(o.config);
    try {
      in >> j;
    } catch (const json::parse_error& e) {
      throw ConfigError({"config: " + o.config + " is not valid JSON (" + e.what() + ")"});
    }
    if (!j.is_object()) throw ConfigError({"config: expected a JSON object"});
    if (j.contains("kind") && j["kind"] != kind_name(kind)) {
      throw ConfigError({"kind: config file says " + j["kind"].dump() + " but the subcommand runs " + kind_name(kind)});
    }
  }
  j["kind"] = kind_name(kind);
  ExperimentConfig c = parse_config(j);

  std::vector<std::string> problems;
  auto guard = [&](const std::string& flag, auto&& f) {
    try {
      f();
    } catch (const std::exception& e) {
      problems.push_back(flag + ": " + e.what());
    }
  };
  if (o.ideal) {
    c.noise = NoiseModel{};
    c.sampling.enabled = false;
  }
  if (o.visibility) c.noise.visibility = *o.visibility;
  if (o.seed) c.sampling.seed = *o.seed;
  if (o.trials) c.sampling.trials = *o.trials;
  if (o.threads) c.sampling.threads = *o.threads;
  if (o.counts) c.sampling.counts_per_setting = *o.counts;
  if (!o.probes.empty()) {
    c.probes.clear();
    for (const auto& p : o.probes) guard("--probe", [&] { c.probes.push_back(parse_probe(p)); });
  }
  if (!o.errors.empty()) {
    c.errors.clear();
    for (const auto& e : o.errors) guard("--error", [&] { c.errors.push_back(parse_error(e)); });
  }
  if (!o.lost.empty()) c.lost = o.lost;
  if (!o.witnesses.empty()) c.witnesses = o.witnesses;
  if (!o.variant.empty()) guard("--variant", [&] { c.witness_variant = parse_variant(o.variant); });
  if (o.s3) c.s3 = *o.s3;
  if (o.keep_byproduct) c.correct_byproduct = false;
  if (o.target) c.fidelity_target = *o.target;
  if (!o.out.empty()) c.out_dir = o.out;
  if (!o.formats.empty()) c.formats = {o.formats.begin(), o.formats.end()};
  if (!problems.empty()) throw ConfigError(problems);
  validate_config(c);
  return c;
}

void emit(const ReportBundle& b, const ExperimentConfig& c, const Options& o, std::ostream& out) {
  if (!c.out_dir.empty()) {
    write_bundle(b, c.out_dir, c.formats);
    for (const auto& line : b.text) out << line << "\n";
    out << "wrote " << c.out_dir << "\n";
  } else if (o.formats.size() == 1 && o.formats[0] == "json") {
    out << b.summary.dump(2) << "\n";
  } else {
    for (const auto& line : b.text) out << line << "\n";
  }
}

ReportBundle build_resource_bundle() {
  const ResourceBuild r = build_resource_checked();
  ReportBundle b;
  json gates = json::array();
  for (const auto& g : r.gates) gates.push_back(g.str());
  json stabilizers = json::array();
  for (const auto& k : stabilizer_generators(named_graphs::resource())) {
    stabilizers.push_back({{"generator", k.str()}, {"expectation", report::clean(expectation(r.state, k))}});
  }
  b.summary = {{"kind", "build-resource"},
               {"results",
                {{"graph", named_graphs::resource().str()},
                 {"gates", gates},
                 {"overlap_with_graph_state", report::clean(r.overlap_with_graph)},
                 {"overlap_with_explicit_state", report::clean(r.overlap_with_explicit)},
                 {"stabilizers", stabilizers},
                 {"log", r.log}}},
               {"provenance", {{"tool", "graphcode"}, {"version", std::string(kVersion)}}}};
  b.text = r.log;
  char buf[128];
  std::snprintf(buf, sizeof buf, "overlap with graph state %.12f, with explicit expansion %.12f",
                r.overlap_with_graph, r.overlap_with_explicit);
  b.text.emplace_back(buf);
  return b;
}

int analyze_counts(const Options& o, std::ostream& out) {
  std::ifstream in(o.input);
  if (!in) throw std::invalid_argument("cannot open " + o.input);
  const auto records = read_counts_csv(in);
  if (o.witnesses.empty()) throw std::invalid_argument("--witness is required");
  const WitnessVariant variant = o.variant.empty() ? WitnessVariant::calibrated : parse_variant(o.variant);
  const int trials = o.trials.value_or(200);
  const int threads = o.threads.value_or(1);
  const std::uint64_t seed = o.seed.value_or(1);
  json results = json::array();
  std::vector<std::string> text;
  std::uint64_t stream = 0;
  for (const auto& name : o.witnesses) {
    std::optional<std::vector<Label>> qubits;
    if (!o.qubits.empty()) qubits = std::vector<Label>(o.qubits.begin(), o.qubits.end());
    const WitnessSpec spec = builtin_witness(name, variant, qubits);
    const double value = estimate_witness(records, spec);
    const auto u = monte_carlo_uncertainty([&](const std::vector<CountRecord>& r) { return estimate_witness(r, spec); },
                                           records, trials, {seed, stream++}, threads);
    const double bound = fidelity_lower_bound(value);
    results.push_back({{"witness", name},
                       {"variant", variant_name(variant)},
                       {"value", report::clean(value)},
                       {"mc_mean", report::clean(u.mean)},
                       {"std", report::clean(u.std)},
                       {"fidelity_lower_bound", report::clean(bound)}});
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s: W = %.6f +/- %.6f, F >= %.6f", name.c_str(), report::clean(value),
                  report::clean(u.std), report::clean(bound));
    text.emplace_back(buf);
  }
  const json summary{{"kind", "analyze-counts"},
                     {"input", o.input},
                     {"results", results},
                     {"provenance", {{"tool", "graphcode"}, {"version", std::string(kVersion)}, {"seed", seed}}}};
  if (!o.out.empty()) {
    std::filesystem::create_directories(o.out);
    std::ofstream(std::filesystem::path(o.out) / "summary.json") << summary.dump(2) << "\n";
  }
  if (o.out.empty() && o.formats.size() == 1 && o.formats[0] == "json") {
    out << summary.dump(2) << "\n";
  } else {
    for (const auto& l : text) out << l << "\n";
  }
  return 0;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"graphcode: graph-state loss-tolerant code simulator", "graphcode"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  Options o;

  auto* build = app.add_subcommand("build-resource", "build the five-qubit resource and check it");
  build->add_option("--out", o.out, "output directory");
  build->add_option("--format", o.formats, "json")->check(CLI::IsMember({"json"}));

  auto* witness = app.add_subcommand("witness", "resource and code-state witnesses");
  add_common(witness, o);
  witness->add_option("--witness", o.witnesses, "resource5, box4, ghz4 or pair2 (repeatable)");
  witness->add_option("--variant", o.variant, "calibrated or as-printed");

  auto* encode_cmd = app.add_subcommand("encode", "encode probes and run logical tomography");
  add_common(encode_cmd, o);
  encode_cmd->add_option("--probe", o.probes, "0, 1, + or +y (repeatable)");
  encode_cmd->add_option("--s3", o.s3, "ancilla outcome branch")->check(CLI::Range(0, 1));
  encode_cmd->add_flag("--keep-byproduct", o.keep_byproduct, "skip the X-bar feedforward");
  encode_cmd->add_option("--variant", o.variant, "calibrated or as-printed");

  auto* channel = app.add_subcommand("channel", "chi matrix of the encoding");
  add_common(channel, o);
  channel->add_option("--s3", o.s3, "ancilla outcome branch")->check(CLI::Range(0, 1));
  channel->add_flag("--keep-byproduct", o.keep_byproduct, "skip the X-bar feedforward");

  auto* loss = app.add_subcommand("loss", "recover the qubit after losing a code qubit");
  add_common(loss, o);
  loss->add_option("--lost", o.lost, "lost code qubit (repeatable)");
  loss->add_option("--probe", o.probes, "0, 1, + or +y (repeatable)");
  loss->add_option("--s3", o.s3, "ancilla outcome branch")->check(CLI::Range(0, 1));

  auto* syndrome = app.add_subcommand("syndrome", "syndrome signs for injected errors");
  add_common(syndrome, o);
  syndrome->add_option("--error", o.errors, "e.g. Z@1 or none (repeatable)");
  syndrome->add_option("--probe", o.probes, "0, 1, + or +y (repeatable)");

  auto* sweep = app.add_subcommand("sweep", "white-noise visibility sweep and calibration");
  add_common(sweep, o);
  sweep->add_option("--target", o.target, "fidelity to calibrate against");
  sweep->add_option("--variant", o.variant, "calibrated or as-printed");

  auto* analyze = app.add_subcommand("analyze-counts", "witness from a recorded count table");
  analyze->add_option("--in", o.input, "counts CSV (setting,outcome,count)")->required()->check(CLI::ExistingFile);
  analyze->add_option("--witness", o.witnesses, "witness name (repeatable)")->required();
  analyze->add_option("--variant", o.variant, "calibrated or as-printed");
  analyze->add_option("--qubits", o.qubits, "witness qubits, e.g. 4 5");
  analyze->add_option("--seed", o.seed, "Monte Carlo seed");
  analyze->add_option("--trials", o.trials, "Monte Carlo trials");
  analyze->add_option("--threads", o.threads, "Monte Carlo threads");
  analyze->add_option("--out", o.out, "output directory");
  analyze->add_option("--format", o.formats, "json")->check(CLI::IsMember({"json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    err << app.help();
    return 1;
  }

  try {
    const std::map<CLI::App*, ExperimentKind> kinds{{witness, ExperimentKind::resource_witness},
                                                   {encode_cmd, ExperimentKind::encode_tomography},
                                                   {channel, ExperimentKind::encode_channel},
                                                   {loss, ExperimentKind::loss_recovery},
                                                   {syndrome, ExperimentKind::syndrome_table},
                                                   {sweep, ExperimentKind::noise_sweep}};
    if (build->parsed()) {
      const ReportBundle b = build_resource_bundle();
      if (!o.out.empty()) write_bundle(b, o.out, {"json"});
      if (o.out.empty() && o.formats.size() == 1) {
        out << b.summary.dump(2) << "\n";
      } else {
        for (const auto& l : b.text) out << l << "\n";
      }
      return 0;
    }
    if (analyze->parsed()) return analyze_counts(o, out);
    for (const auto& [sub, kind] : kinds) {
      if (!sub->parsed()) continue;
      const ExperimentConfig c = make_config(kind, o);
      emit(run_experiment(c), c, o, out);
      return 0;
    }
    err << app.help();
    return 1;
  } catch (const ConfigError& e) {
    err << "config error:\n";
    for (const auto& p : e.problems()) err << "  " << p << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "runtime error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace graphcode
