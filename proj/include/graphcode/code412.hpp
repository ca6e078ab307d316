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

#ifndef GRAPHCODE_CODE412_HPP
#define GRAPHCODE_CODE412_HPP

#include <array>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "graphcode/kernel.hpp"
#include "graphcode/pauli.hpp"

namespace graphcode {

/// Code qubits, in the order every four-qubit register uses.
inline const std::vector<Label> kCodeLabels{1, 2, 4, 5};
constexpr Label kAncilla = 3;

enum class Probe { zero, one, plus, plus_y };

std::string probe_name(Probe p);
/// "0", "1", "+", "+y".
Probe parse_probe(std::string_view name);
inline constexpr std::array<Probe, 4> kProbes{Probe::zero, Probe::one, Probe::plus, Probe::plus_y};

/// alpha|0> + beta|1>.
class AncillaState {
 public:
  AncillaState(cplx alpha, cplx beta);
  /// alpha = cos(theta/2), beta = e^{i phi} sin(theta/2).
  static AncillaState from_angles(double theta, double phi);
  static AncillaState from_probe(Probe p);
  /// Haar-random pure state.
  static AncillaState random(std::mt19937_64& rng);

  cplx alpha() const { return alpha_; }
  cplx beta() const { return beta_; }
  /// (e_x, e_y, e_z).
  std::array<double, 3> bloch() const;
  /// alpha' = (alpha+beta)/sqrt2, beta' = (alpha-beta)/sqrt2.
  AncillaState hadamard_rotated() const;
  PureState state(Label q) const;

 private:
  cplx alpha_;
  cplx beta_;
};

struct LogicalOperators {
  PauliString xbar;
  PauliString zbar;
  PauliString ybar;
};

/// X = Z1 Z2 X4, Z = Z1 Z2 Z4 Z5, Y = i X Z.
LogicalOperators logical_ops();

/// S1 = Y1 Z2 Z4 Y5, S2 = Y1 Z2 Y4 Z5, S3 = Z1 Y2 Y4 Z5.
const std::array<PauliString, 3>& syndrome_operators();
/// All eight products of the syndrome operators, identity first.
std::vector<PauliString> stabilizer_group();

/// Keys "0_L", "1_L", "+_L", "-_L", "+y_L", "-y_L"; every state on kCodeLabels.
std::map<std::string, PureState> logical_basis_states();
PureState logical_state(std::string_view key);
/// alpha|0_L> + beta|1_L>.
PureState logical_state(const AncillaState& a);
/// alpha|+_L> + beta|-_L>: what an ideal encoding of `a` produces.
PureState encoded_target(const AncillaState& a);

struct EncodeResult {
  int s3;
  double probability;
  /// Straight after the ancilla measurement, byproduct still present.
  DensityOperator raw;
  /// After the X-bar^{s3} feedforward.
  DensityOperator corrected;
};

/// Loads `a` onto the ancilla of the ideal resource, i.e. CZ_T(|a>_3 (x) box),
/// and measures qubit 3 in X.
EncodeResult encode(const AncillaState& a, std::optional<int> forced_s3 = std::nullopt);
EncodeResult encode(const AncillaState& a, std::mt19937_64& rng);
/// Same on a (possibly noisy) five-qubit resource. The ancilla is loaded with the
/// filter sqrt2 diag(alpha, beta) followed by renormalisation, which is exact on
/// the ideal resource.
EncodeResult encode(const DensityOperator& resource, const AncillaState& a, std::optional<int> forced_s3 = std::nullopt);
EncodeResult encode(const DensityOperator& resource, const AncillaState& a, std::mt19937_64& rng);
/// Both branches already corrected, weighted by their probabilities.
DensityOperator encode_averaged(const DensityOperator& resource, const AncillaState& a);

/// "Z@1", "x@4", "none" or "I".
PauliString parse_error(std::string_view spec);
std::string error_name(const PauliString& e);
/// Every weight-one Pauli on the code qubits, location-major, letters X, Y, Z.
std::vector<PauliString> single_qubit_errors();

/// Throws std::invalid_argument for weight > 1 or support off the code qubits.
PureState inject_pauli_error(const PureState& psi, const PauliString& error);
DensityOperator inject_pauli_error(const DensityOperator& rho, const PauliString& error);

using Signs = std::array<int, 3>;

struct SyndromeRecord {
  std::array<double, 3> values;
  /// +1 when the value is >= 0.
  Signs signs() const;
};

SyndromeRecord measure_syndromes(const PureState& psi);
SyndromeRecord measure_syndromes(const DensityOperator& rho);
/// Sign of <S_i E> on a code state: -1 exactly when E anticommutes with S_i.
Signs predicted_signs(const PauliString& error);
std::string signs_str(const Signs& s);

struct Diagnosis {
  enum class Kind { no_error, detected_unlocatable, located, inconsistent };
  Kind kind;
  /// Single-qubit errors whose pattern matches (restricted to the location if one was given).
  std::vector<PauliString> candidates;
  /// Set only for Kind::located.
  std::optional<PauliString> error;
  std::optional<PauliString> correction;
};

std::string diagnosis_name(Diagnosis::Kind k);
Diagnosis diagnose(const Signs& signs, std::optional<Label> known_location = std::nullopt);

/// Partial trace over q.
DensityOperator lose_qubit(const DensityOperator& rho, Label q);
DensityOperator lose_qubit(const PureState& psi, Label q);

using OutcomePair = std::pair<int, int>;

struct RecoveryRecipe {
  Label lost;
  /// Measured in this order; outcomes (s_a, s_b) follow the same order.
  std::array<std::pair<Label, Basis>, 2> helpers;
  Label output;
  /// Pauli applied to the output for each outcome pair, before the frame.
  std::map<OutcomePair, PauliString> corrections;
  /// Fixed unitary applied last.
  Matrix frame;
  std::string frame_name;
  /// The two reshaped logical operators that justified the helper bases.
  PauliString xbar_rep;
  PauliString zbar_rep;

  std::string str() const;
};

/// Derived once per lost qubit and cached. Throws std::invalid_argument for
/// qubit 3 or any label outside the code.
const RecoveryRecipe& recovery_recipe(Label lost);

struct RecoveryResult {
  OutcomePair outcomes;
  double probability;
  DensityOperator recovered;
};

/// `rho` is the three surviving qubits, any order.
RecoveryResult recover(const DensityOperator& rho, const RecoveryRecipe& recipe, std::optional<OutcomePair> forced);
RecoveryResult recover(const DensityOperator& rho, const RecoveryRecipe& recipe, std::mt19937_64& rng);
/// Probability-weighted mixture of every corrected branch.
DensityOperator recover_averaged(const DensityOperator& rho, const RecoveryRecipe& recipe);

/// lose_qubit(., 4) followed by the lost-4 recipe.
RecoveryResult decode_no_loss(const DensityOperator& rho, std::optional<OutcomePair> forced);
DensityOperator decode_no_loss(const DensityOperator& rho);

}  // namespace graphcode

#endif  // GRAPHCODE_CODE412_HPP
