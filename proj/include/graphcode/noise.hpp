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

#ifndef GRAPHCODE_NOISE_HPP
#define GRAPHCODE_NOISE_HPP

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <random>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "graphcode/kernel.hpp"
#include "graphcode/witness.hpp"

namespace graphcode {

enum class ApplicationPoint { post_resource, post_encoding };

std::string point_name(ApplicationPoint p);
/// "post-resource" or "post-encoding".
ApplicationPoint parse_point(std::string_view name);

struct NoiseModel {
  /// Per-qubit depolarising probability p: rho -> (1-p) rho + p Tr_q(rho) (x) I/2.
  std::map<Label, double> depolarizing;
  /// Per-qubit dephasing probability q: Z applied with probability q.
  std::map<Label, double> dephasing;
  /// Global white-noise visibility: rho -> v rho + (1-v) I/2^n.
  double visibility = 1.0;
  ApplicationPoint point = ApplicationPoint::post_resource;

  static NoiseModel white(double v, ApplicationPoint point = ApplicationPoint::post_resource);
  /// Throws std::invalid_argument naming the first out-of-range parameter.
  void validate() const;
  bool is_ideal() const;
};

/// Local channels first (qubits absent from rho are skipped), then white noise.
DensityOperator apply_noise(const DensityOperator& rho, const NoiseModel& model);

struct RngSeed {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
};

/// mt19937_64 seeded from (seed, stream) through std::seed_seq.
std::mt19937_64 make_rng(RngSeed s);

/// Expected counts per setting when nothing else is configured.
constexpr double kDefaultCountsPerSetting = 500.0;

struct CountRecord {
  std::vector<Label> qubits;
  /// One basis letter per qubit, e.g. "XXXXX".
  std::string setting;
  /// Outcome bitstring (qubit order, '0' <-> +1) -> count. All 2^n cells present.
  std::map<std::string, std::uint64_t> histogram;
  double expected_total = 0.0;

  std::uint64_t total() const;
  /// "X1X2X3X4X5".
  std::string setting_label() const;
};

/// Total ~ Poisson(N), then a multinomial over the exact outcome probabilities.
CountRecord sample_setting_counts(const DensityOperator& rho, const std::vector<Label>& qubits, std::string_view setting,
                                  double expected_total, RngSeed seed);

/// Mean of (-1)^(parity of the bits on `mask`). Throws std::invalid_argument when empty.
double estimate_expectation(const CountRecord& counts, const std::set<Label>& mask);

/// One record per witness setting; setting k draws from stream seed.stream * 64 + k.
std::vector<CountRecord> sample_witness_counts(const DensityOperator& rho, const WitnessSpec& w, double expected_total,
                                               RngSeed seed);
/// Signed term expectations estimated from the matching setting records.
std::vector<double> estimate_witness_terms(const std::vector<CountRecord>& counts, const WitnessSpec& w);
double estimate_witness(const std::vector<CountRecord>& counts, const WitnessSpec& w);

struct Uncertainty {
  double mean;
  double std;
};

using CountStatistic = std::function<double(const std::vector<CountRecord>&)>;

/// Resamples every cell as Poisson(count) `trials` times. Trial t draws from its
/// own stream, so the result does not depend on `threads`. Throws for trials < 100.
Uncertainty monte_carlo_uncertainty(const CountStatistic& statistic, const std::vector<CountRecord>& counts, int trials,
                                    RngSeed seed, int threads = 1);

/// "setting,outcome,count" rows; setting written as "X1X2X3X4X5".
void write_counts_csv(std::ostream& out, const std::vector<CountRecord>& records);
/// Records grouped by setting in first-seen order. Missing cells are filled with 0.
std::vector<CountRecord> read_counts_csv(std::istream& in);

/// Solves f(v) = target on [lo, hi] for monotone f. Throws std::domain_error
/// unless the endpoints bracket the target.
double bisect(const std::function<double(double)>& f, double target, double lo, double hi, double tol = 1e-10);

}  // namespace graphcode

#endif  // GRAPHCODE_NOISE_HPP
