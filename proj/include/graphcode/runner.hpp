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

#ifndef GRAPHCODE_RUNNER_HPP
#define GRAPHCODE_RUNNER_HPP

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "graphcode/code412.hpp"
#include "graphcode/graph.hpp"
#include "graphcode/noise.hpp"
#include "graphcode/tomography.hpp"
#include "graphcode/witness.hpp"

namespace graphcode {

inline constexpr std::string_view kVersion = "0.1.0";

enum class ExperimentKind { resource_witness, encode_tomography, encode_channel, loss_recovery, syndrome_table, noise_sweep };

std::string kind_name(ExperimentKind k);
ExperimentKind parse_kind(std::string_view name);

struct SamplingConfig {
  bool enabled = true;
  double counts_per_setting = kDefaultCountsPerSetting;
  int trials = 200;
  std::uint64_t seed = 1;
  int threads = 1;
};

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::resource_witness;
  NoiseModel noise;
  std::vector<Probe> probes{kProbes.begin(), kProbes.end()};
  /// Syndrome-table errors; empty means none plus all twelve single-qubit errors.
  std::vector<PauliString> errors;
  std::vector<Label> lost{4};
  std::vector<std::string> witnesses{"resource5"};
  WitnessVariant witness_variant = WitnessVariant::calibrated;
  /// Encoding branch kept for tomography (the byproduct-free branch by default).
  int s3 = 0;
  bool correct_byproduct = true;
  /// Replaces the five-qubit resource in resource-witness runs.
  std::optional<Graph> graph;
  std::vector<double> visibilities{0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
  double fidelity_target = 0.78;
  SamplingConfig sampling;
  std::string out_dir;
  std::set<std::string> formats{"json", "csv"};
};

/// Lists every offending field, e.g. "noise.visibility: must lie in [0, 1]".
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> problems);
  const std::vector<std::string>& problems() const { return problems_; }

 private:
  std::vector<std::string> problems_;
};

ExperimentConfig parse_config(const nlohmann::json& j);
ExperimentConfig load_config(const std::filesystem::path& path);
/// Canonical form; its dump is what the provenance hash covers.
nlohmann::json config_to_json(const ExperimentConfig& c);
/// Throws ConfigError if the config cannot run.
void validate_config(const ExperimentConfig& c);

/// 64-bit FNV-1a, printed as 16 hex digits.
std::string fnv1a_hex(std::string_view data);

struct ReportBundle {
  nlohmann::json summary;
  /// File name -> contents.
  std::map<std::string, std::string> csv;
  std::map<std::string, std::string> svg;
  /// Human-readable summary lines for the terminal.
  std::vector<std::string> text;
};

ReportBundle run_experiment(const ExperimentConfig& config);
/// Writes summary.json plus the CSV and SVG files selected by `formats`.
void write_bundle(const ReportBundle& bundle, const std::filesystem::path& dir, const std::set<std::string>& formats);

/// Five-qubit resource with post-resource noise applied.
DensityOperator noisy_resource(const NoiseModel& noise);
/// Encoded four-qubit state for one ancilla on one branch (or averaged over both when s3 < 0).
DensityOperator encoded_state(const NoiseModel& noise, const AncillaState& a, int s3, bool correct_byproduct);
/// Ancilla -> logical qubit map of the encoding, from logical tomography.
ChiMatrix encoding_chi(const NoiseModel& noise, int s3, bool correct_byproduct);
/// Recovered single-qubit state after encoding on branch s3 (byproduct corrected)
/// and losing `lost`, all helper branches averaged.
DensityOperator recovered_state(const NoiseModel& noise, Label lost, const AncillaState& a, int s3 = 0);
/// Ancilla -> recovered qubit.
ChiMatrix recovery_chi(const NoiseModel& noise, Label lost, int s3 = 0);

/// Subcommands build-resource, witness, encode, channel, loss, syndrome, sweep,
/// analyze-counts. Returns 0 on success, 1 for usage or config errors, 2 for
/// runtime failures.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace graphcode

#endif  // GRAPHCODE_RUNNER_HPP
