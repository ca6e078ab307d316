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

#ifndef GRAPHCODE_WITNESS_HPP
#define GRAPHCODE_WITNESS_HPP

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "graphcode/kernel.hpp"
#include "graphcode/pauli.hpp"

namespace graphcode {

struct Rational {
  long num = 0;
  long den = 1;

  Rational() = default;
  Rational(long n, long d = 1);

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string str() const;
  friend bool operator==(const Rational&, const Rational&) = default;
};

/// coefficient * (tilde sign) * pauli. A tilde on a site swaps the eigenstates
/// of that site's measurement, which is O -> -O.
struct WitnessTerm {
  Rational coefficient;
  PauliString pauli;
  std::set<Label> tilde;

  /// (-1)^(number of tildes on non-identity sites).
  int sign() const;
  /// "X~IX~IX~" over `qubits`.
  std::string word(const std::vector<Label>& qubits) const;
};

enum class WitnessVariant { calibrated, as_printed };

std::string variant_name(WitnessVariant v);
WitnessVariant parse_variant(std::string_view name);

/// W = constant * I - sum_k coefficient_k * term_k.
struct WitnessSpec {
  std::string name;
  WitnessVariant variant = WitnessVariant::calibrated;
  std::vector<Label> qubits;
  Rational constant;
  std::vector<WitnessTerm> terms;

  /// Local measurement settings (one basis letter per qubit) covering every term.
  std::vector<std::string> settings() const;
  /// Index into settings() that measures term k.
  std::size_t setting_of(std::size_t k) const;
  /// The witness for P rho P^dagger: toggles the tilde wherever P anticommutes.
  WitnessSpec conjugated_by(const PauliString& p) const;
  Matrix dense() const;
  std::string str() const;
};

/// "resource5", "box4", "ghz4", "pair2". `qubits` relabels the positions
/// (defaults: 1..5, {1,2,4,5}, {1,2,4,5}, {1,2}).
WitnessSpec builtin_witness(std::string_view name, WitnessVariant variant = WitnessVariant::calibrated,
                            std::optional<std::vector<Label>> qubits = std::nullopt);
std::vector<WitnessSpec> builtin_witnesses(WitnessVariant variant = WitnessVariant::calibrated);

struct WitnessEvaluation {
  double value;
  /// Signed expectation of each term, tilde included.
  std::vector<double> term_values;
};

WitnessEvaluation evaluate_witness(const DensityOperator& rho, const WitnessSpec& w);
WitnessEvaluation evaluate_witness(const PureState& psi, const WitnessSpec& w);
/// Combines signed term expectations with the witness coefficients.
double witness_value(const WitnessSpec& w, const std::vector<double>& term_values);

/// (1 - W)/2 clamped to [0, 1].
double fidelity_lower_bound(double value);

}  // namespace graphcode

#endif  // GRAPHCODE_WITNESS_HPP
