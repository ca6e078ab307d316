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

#include "graphcode/code412.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <set>
#include <sstream>
#include <stdexcept>

#include "graphcode/graph.hpp"

namespace graphcode {

namespace {

constexpr double kMinBranchProbability = 1e-12;
constexpr double kRecipeTolerance = 1e-9;

bool is_code_label(Label q) { return std::find(kCodeLabels.begin(), kCodeLabels.end(), q) != kCodeLabels.end(); }

PureState combine(cplx a, const PureState& x, cplx b, const PureState& y) {
  const Vector v = a * x.amplitudes() + b * y.reordered(x.labels()).amplitudes();
  return PureState(x.labels(), v / v.norm());
}

double fidelity_1q(const DensityOperator& rho, const PureState& psi) {
  const Vector v = psi.reordered(rho.labels()).amplitudes();
  return std::clamp((v.adjoint() * rho.matrix() * v)(0, 0).real(), 0.0, 1.0);
}

std::array<double, 3> bloch_of(const DensityOperator& rho) {
  const auto q = rho.labels().front();
  return {expectation(rho, PauliString::single(q, Letter::X)), expectation(rho, PauliString::single(q, Letter::Y)),
          expectation(rho, PauliString::single(q, Letter::Z))};
}

/// 2x2 unitary whose adjoint action on Bloch vectors is the rotation R.
Matrix unitary_from_rotation(const Eigen::Matrix3d& r) {
  const Eigen::Quaterniond q(r);
  const cplx i{0.0, 1.0};
  return q.w() * gates::identity() - i * (q.x() * gates::pauli_x() + q.y() * gates::pauli_y() + q.z() * gates::pauli_z());
}

/// Letter L with U = c L, |c| = 1, or nullopt.
std::optional<Letter> as_pauli(const Matrix& u) {
  for (Letter l : {Letter::I, Letter::X, Letter::Y, Letter::Z}) {
    if (std::abs(std::abs((letter_matrix(l).adjoint() * u).trace()) - 2.0) < 1e-9) return l;
  }
  return std::nullopt;
}

std::string clifford_name(const Matrix& u) {
  const std::vector<std::pair<std::string, Matrix>> named{
      {"I", gates::identity()},  {"X", gates::pauli_x()},  {"Y", gates::pauli_y()},
      {"Z", gates::pauli_z()},   {"H", gates::hadamard()}, {"S", gates::phase_s()},
      {"S^dagger", gates::phase_s().adjoint()},
  };
  for (const auto& [name, m] : named) {
    if (std::abs(std::abs((m.adjoint() * u).trace()) - 2.0) < 1e-9) return name;
  }
  return "U";
}

struct Branch {
  double probability;
  DensityOperator output;
};

std::optional<Branch> measure_helpers(const DensityOperator& rho, const RecoveryRecipe& recipe, OutcomePair s) {
  const auto [ha, ba] = recipe.helpers[0];
  const auto [hb, bb] = recipe.helpers[1];
  const double pa = outcome_probability(rho, ha, ba, s.first);
  if (pa < kMinBranchProbability) return std::nullopt;
  const auto ma = projective_measure(rho, ha, ba, s.first);
  const double pb = outcome_probability(ma.post_state, hb, bb, s.second);
  if (pa * pb < kMinBranchProbability) return std::nullopt;
  const auto mb = projective_measure(ma.post_state, hb, bb, s.second);
  return Branch{pa * pb, mb.post_state};
}

DensityOperator correct_branch(const DensityOperator& out, const RecoveryRecipe& recipe, OutcomePair s) {
  const std::vector<Label> target{recipe.output};
  DensityOperator r = apply_pauli(out, recipe.corrections.at(s));
  return apply_unitary(r, recipe.frame, target);
}

Label rotated_output(Label lost) {
  // One step around the box 4-cycle 4 -> 1 -> 5 -> 2 -> 4.
  switch (lost) {
    case 4:
      return 1;
    case 1:
      return 5;
    case 5:
      return 2;
    case 2:
      return 4;
    default:
      throw std::invalid_argument("lost qubit must be one of 1, 2, 4, 5");
  }
}

RecoveryRecipe derive_recipe(Label lost) {
  RecoveryRecipe recipe;
  recipe.lost = lost;
  recipe.output = rotated_output(lost);
  std::vector<Label> helpers;
  for (Label q : kCodeLabels) {
    if (q != lost && q != recipe.output) helpers.push_back(q);
  }

  // Reshape X-bar and Z-bar by stabilizers until neither touches the lost qubit
  // and every helper sees a single X or Z letter.
  const auto lo = logical_ops();
  const auto group = stabilizer_group();
  std::map<std::pair<Basis, Basis>, std::pair<PauliString, PauliString>> options;
  for (const auto& s : group) {
    const PauliString xr = reshape_by_stabilizer(lo.xbar, s);
    if (xr.at(lost) != Letter::I) continue;
    for (const auto& t : group) {
      const PauliString zr = reshape_by_stabilizer(lo.zbar, t);
      if (zr.at(lost) != Letter::I) continue;
      const Letter xo = xr.at(recipe.output), zo = zr.at(recipe.output);
      if (xo == Letter::I || zo == Letter::I || xo == zo) continue;
      std::array<Basis, 2> bases{};
      bool ok = true;
      for (std::size_t k = 0; k < 2 && ok; ++k) {
        std::set<Letter> seen;
        for (Letter l : {xr.at(helpers[k]), zr.at(helpers[k])}) {
          if (l != Letter::I) seen.insert(l);
        }
        if (seen.size() != 1 || *seen.begin() == Letter::Y) {
          ok = false;
        } else {
          bases[k] = *seen.begin() == Letter::X ? Basis::X : Basis::Z;
        }
      }
      if (ok) options.try_emplace({bases[0], bases[1]}, xr, zr);
    }
  }
  if (options.size() != 1) {
    throw std::logic_error("recovery search for lost qubit " + std::to_string(lost) + " found " +
                           std::to_string(options.size()) + " X/Z helper assignments");
  }
  const auto& [bases, reps] = *options.begin();
  recipe.helpers = {std::pair{helpers[0], bases.first}, std::pair{helpers[1], bases.second}};
  recipe.xbar_rep = reps.first;
  recipe.zbar_rep = reps.second;

  // Each branch acts on the encoded qubit as a fixed unitary U_s; read it off
  // from the Bloch images of the probes.
  std::map<OutcomePair, Matrix> branch_unitary;
  for (int sa = 0; sa < 2; ++sa) {
    for (int sb = 0; sb < 2; ++sb) {
      std::map<Probe, Eigen::Vector3d> image;
      for (Probe p : kProbes) {
        const auto a = AncillaState::from_probe(p);
        const auto branch = measure_helpers(lose_qubit(encoded_target(a), lost), recipe, {sa, sb});
        if (!branch) throw std::logic_error("recovery branch with zero probability");
        const auto b = bloch_of(branch->output);
        image[p] = Eigen::Vector3d(b[0], b[1], b[2]);
      }
      const Eigen::Vector3d shift = (image[Probe::zero] + image[Probe::one]) / 2.0;
      Eigen::Matrix3d r;
      r.col(0) = image[Probe::plus] - shift;
      r.col(1) = image[Probe::plus_y] - shift;
      r.col(2) = image[Probe::zero] - shift;
      if (shift.norm() > kRecipeTolerance || (r * r.transpose() - Eigen::Matrix3d::Identity()).norm() > 1e-8 ||
          r.determinant() < 0) {
        throw std::logic_error("recovery branch is not a unitary map of the encoded qubit");
      }
      branch_unitary[{sa, sb}] = unitary_from_rotation(r);
    }
  }
  const Matrix& u00 = branch_unitary.at({0, 0});
  recipe.frame = u00.adjoint();
  recipe.frame_name = clifford_name(recipe.frame);
  for (const auto& [s, u] : branch_unitary) {
    const auto letter = as_pauli(u00 * u.adjoint());
    if (!letter) throw std::logic_error("recovery correction is not a Pauli operator");
    recipe.corrections[s] = PauliString::single(recipe.output, *letter);
  }

  // Oracle: every probe comes back on every branch.
  for (Probe p : kProbes) {
    const auto a = AncillaState::from_probe(p);
    const auto rho = lose_qubit(encoded_target(a), lost);
    for (const auto& [s, c] : recipe.corrections) {
      const auto r = recover(rho, recipe, s);
      if (fidelity_1q(r.recovered, a.state(recipe.output)) < 1.0 - kRecipeTolerance) {
        throw std::logic_error("derived recovery recipe failed validation");
      }
    }
  }
  return recipe;
}

EncodeResult finish_encode(Measurement<DensityOperator> m) {
  DensityOperator corrected = m.outcome == 1 ? apply_pauli(m.post_state, logical_ops().xbar) : m.post_state;
  return EncodeResult{m.outcome, m.probability, m.post_state.reordered(kCodeLabels), corrected.reordered(kCodeLabels)};
}

DensityOperator load_ancilla(const DensityOperator& resource, const AncillaState& a) {
  Matrix filter = Matrix::Zero(2, 2);
  filter(0, 0) = std::numbers::sqrt2 * a.alpha();
  filter(1, 1) = std::numbers::sqrt2 * a.beta();
  const std::vector<Label> target{kAncilla};
  return apply_filter(resource, filter, target);
}

DensityOperator ideal_loaded(const AncillaState& a) {
  const PureState psi = tensor_product(a.state(kAncilla), graph_state(named_graphs::box()));
  const auto circuit = encoder_circuit();
  return DensityOperator(apply_gates(psi, circuit));
}

}  // namespace

std::string probe_name(Probe p) {
  switch (p) {
    case Probe::zero:
      return "0";
    case Probe::one:
      return "1";
    case Probe::plus:
      return "+";
    case Probe::plus_y:
      return "+y";
  }
  return "?";
}

Probe parse_probe(std::string_view name) {
  for (Probe p : kProbes) {
    if (probe_name(p) == name) return p;
  }
  throw std::invalid_argument("unknown probe '" + std::string(name) + "' (expected 0, 1, + or +y)");
}

AncillaState::AncillaState(cplx alpha, cplx beta) : alpha_(alpha), beta_(beta) {
  if (std::abs(std::norm(alpha) + std::norm(beta) - 1.0) > kNormTolerance) {
    throw std::invalid_argument("ancilla amplitudes are not normalised");
  }
}

AncillaState AncillaState::from_angles(double theta, double phi) {
  return AncillaState(std::cos(theta / 2.0), std::polar(1.0, phi) * std::sin(theta / 2.0));
}

AncillaState AncillaState::from_probe(Probe p) {
  const double r = 1.0 / std::numbers::sqrt2;
  switch (p) {
    case Probe::zero:
      return AncillaState(1.0, 0.0);
    case Probe::one:
      return AncillaState(0.0, 1.0);
    case Probe::plus:
      return AncillaState(r, r);
    case Probe::plus_y:
      return AncillaState(r, cplx(0.0, r));
  }
  throw std::invalid_argument("unknown probe");
}

AncillaState AncillaState::random(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  const cplx a{g(rng), g(rng)};
  const cplx b{g(rng), g(rng)};
  const double n = std::sqrt(std::norm(a) + std::norm(b));
  return AncillaState(a / n, b / n);
}

std::array<double, 3> AncillaState::bloch() const {
  const cplx c = std::conj(alpha_) * beta_;
  return {2.0 * c.real(), 2.0 * c.imag(), std::norm(alpha_) - std::norm(beta_)};
}

AncillaState AncillaState::hadamard_rotated() const {
  return AncillaState((alpha_ + beta_) / std::numbers::sqrt2, (alpha_ - beta_) / std::numbers::sqrt2);
}

PureState AncillaState::state(Label q) const {
  Vector v(2);
  v << alpha_, beta_;
  return PureState({q}, v);
}

LogicalOperators logical_ops() {
  const PauliString x = PauliString::parse("Z1 Z2 X4");
  const PauliString z = PauliString::parse("Z1 Z2 Z4 Z5");
  return {x, z, (x * z).with_phase((x * z).phase_exponent() + 1)};
}

const std::array<PauliString, 3>& syndrome_operators() {
  static const std::array<PauliString, 3> s{PauliString::parse("Y1 Z2 Z4 Y5"), PauliString::parse("Y1 Z2 Y4 Z5"),
                                            PauliString::parse("Z1 Y2 Y4 Z5")};
  return s;
}

std::vector<PauliString> stabilizer_group() {
  const auto& s = syndrome_operators();
  std::vector<PauliString> out;
  for (int mask = 0; mask < 8; ++mask) {
    PauliString p;
    for (int k = 0; k < 3; ++k) {
      if (mask & (1 << k)) p = p * s[k];
    }
    out.push_back(p);
  }
  return out;
}

std::map<std::string, PureState> logical_basis_states() {
  const PureState plus = graph_state(named_graphs::box());
  const PureState minus = apply_pauli(plus, logical_ops().zbar);
  const double r = 1.0 / std::numbers::sqrt2;
  const cplx i{0.0, 1.0};
  const PureState zero = combine(r, plus, r, minus);
  const PureState one = combine(r, plus, -r, minus);
  return {
      {"0_L", zero},
      {"1_L", one},
      {"+_L", plus},
      {"-_L", minus},
      {"+y_L", combine(r, zero, i * r, one)},
      {"-y_L", combine(r, zero, -i * r, one)},
  };
}

PureState logical_state(std::string_view key) {
  const auto states = logical_basis_states();
  auto it = states.find(std::string(key));
  if (it == states.end()) throw std::invalid_argument("unknown logical state '" + std::string(key) + "'");
  return it->second;
}

PureState logical_state(const AncillaState& a) {
  const auto states = logical_basis_states();
  return combine(a.alpha(), states.at("0_L"), a.beta(), states.at("1_L"));
}

PureState encoded_target(const AncillaState& a) {
  const auto states = logical_basis_states();
  return combine(a.alpha(), states.at("+_L"), a.beta(), states.at("-_L"));
}

EncodeResult encode(const AncillaState& a, std::optional<int> forced_s3) {
  const DensityOperator loaded = ideal_loaded(a);
  if (forced_s3) return finish_encode(projective_measure(loaded, kAncilla, Basis::X, *forced_s3));
  std::mt19937_64 rng(0);
  return finish_encode(projective_measure(loaded, kAncilla, Basis::X, rng));
}

EncodeResult encode(const AncillaState& a, std::mt19937_64& rng) {
  return finish_encode(projective_measure(ideal_loaded(a), kAncilla, Basis::X, rng));
}

EncodeResult encode(const DensityOperator& resource, const AncillaState& a, std::optional<int> forced_s3) {
  const DensityOperator loaded = load_ancilla(resource, a);
  if (forced_s3) return finish_encode(projective_measure(loaded, kAncilla, Basis::X, *forced_s3));
  std::mt19937_64 rng(0);
  return finish_encode(projective_measure(loaded, kAncilla, Basis::X, rng));
}

EncodeResult encode(const DensityOperator& resource, const AncillaState& a, std::mt19937_64& rng) {
  return finish_encode(projective_measure(load_ancilla(resource, a), kAncilla, Basis::X, rng));
}

DensityOperator encode_averaged(const DensityOperator& resource, const AncillaState& a) {
  const DensityOperator loaded = load_ancilla(resource, a);
  Matrix sum = Matrix::Zero(16, 16);
  for (int s = 0; s < 2; ++s) {
    if (outcome_probability(loaded, kAncilla, Basis::X, s) < kMinBranchProbability) continue;
    const auto r = finish_encode(projective_measure(loaded, kAncilla, Basis::X, s));
    sum += r.probability * r.corrected.matrix();
  }
  return DensityOperator(kCodeLabels, sum);
}

PauliString parse_error(std::string_view spec) {
  std::string s(spec);
  if (s == "none" || s == "I" || s.empty()) return PauliString();
  const auto at = s.find('@');
  if (at != 1 || s.size() < 3) throw std::invalid_argument("error spec '" + s + "' is not of the form P@q");
  const Letter l = parse_letter(s[0]);
  int q = 0;
  try {
    std::size_t used = 0;
    q = std::stoi(s.substr(2), &used);
    if (used != s.size() - 2) throw std::invalid_argument("trailing characters");
  } catch (const std::exception&) {
    throw std::invalid_argument("error spec '" + s + "' has a bad qubit label");
  }
  if (!is_code_label(q)) throw std::invalid_argument("error location must be a code qubit (1, 2, 4, 5)");
  return PauliString::single(q, l);
}

std::string error_name(const PauliString& e) {
  if (e.is_identity()) return "none";
  if (e.weight() != 1) return e.str();
  const auto& [q, l] = *e.letters().begin();
  return std::string(1, letter_char(l)) + "@" + std::to_string(q);
}

std::vector<PauliString> single_qubit_errors() {
  std::vector<PauliString> out;
  for (Label q : kCodeLabels) {
    for (Letter l : {Letter::X, Letter::Y, Letter::Z}) out.push_back(PauliString::single(q, l));
  }
  return out;
}

namespace {
void check_error(const PauliString& error) {
  if (error.weight() > 1) throw std::invalid_argument("only single-qubit errors are supported");
  for (const auto& [q, l] : error.letters()) {
    if (!is_code_label(q)) throw std::invalid_argument("error must act on a code qubit (1, 2, 4, 5)");
  }
}
}  // namespace

PureState inject_pauli_error(const PureState& psi, const PauliString& error) {
  check_error(error);
  return apply_pauli(psi, error);
}

DensityOperator inject_pauli_error(const DensityOperator& rho, const PauliString& error) {
  check_error(error);
  return apply_pauli(rho, error);
}

Signs SyndromeRecord::signs() const {
  Signs s{};
  for (std::size_t i = 0; i < 3; ++i) s[i] = values[i] >= 0.0 ? 1 : -1;
  return s;
}

SyndromeRecord measure_syndromes(const PureState& psi) { return measure_syndromes(DensityOperator(psi)); }

SyndromeRecord measure_syndromes(const DensityOperator& rho) {
  SyndromeRecord r{};
  const auto& s = syndrome_operators();
  for (std::size_t i = 0; i < 3; ++i) r.values[i] = expectation(rho, s[i]);
  return r;
}

Signs predicted_signs(const PauliString& error) {
  Signs out{};
  const auto& s = syndrome_operators();
  for (std::size_t i = 0; i < 3; ++i) out[i] = commutes(s[i], error) ? 1 : -1;
  return out;
}

std::string signs_str(const Signs& s) {
  std::string out = "(";
  for (std::size_t i = 0; i < 3; ++i) {
    if (i) out += ",";
    out += s[i] > 0 ? "+1" : "-1";
  }
  return out + ")";
}

std::string diagnosis_name(Diagnosis::Kind k) {
  switch (k) {
    case Diagnosis::Kind::no_error:
      return "no-error";
    case Diagnosis::Kind::detected_unlocatable:
      return "detected-unlocatable";
    case Diagnosis::Kind::located:
      return "located";
    case Diagnosis::Kind::inconsistent:
      return "inconsistent";
  }
  return "?";
}

Diagnosis diagnose(const Signs& signs, std::optional<Label> known_location) {
  Diagnosis d{Diagnosis::Kind::no_error, {}, std::nullopt, std::nullopt};
  for (int s : signs) {
    if (s != 1 && s != -1) throw std::invalid_argument("syndrome signs must be +1 or -1");
  }
  if (signs == Signs{1, 1, 1}) return d;
  if (known_location && !is_code_label(*known_location)) {
    throw std::invalid_argument("error location must be a code qubit (1, 2, 4, 5)");
  }
  for (const auto& e : single_qubit_errors()) {
    if (known_location && e.letters().begin()->first != *known_location) continue;
    if (predicted_signs(e) == signs) d.candidates.push_back(e);
  }
  if (d.candidates.empty()) {
    d.kind = Diagnosis::Kind::inconsistent;
  } else if (d.candidates.size() == 1) {
    d.kind = Diagnosis::Kind::located;
    d.error = d.candidates.front();
    d.correction = d.candidates.front();
  } else if (known_location) {
    throw std::logic_error("two error types share a syndrome pattern at one location");
  } else {
    d.kind = Diagnosis::Kind::detected_unlocatable;
  }
  return d;
}

DensityOperator lose_qubit(const DensityOperator& rho, Label q) {
  std::vector<Label> keep;
  bool found = false;
  for (Label l : rho.labels()) {
    if (l == q) {
      found = true;
    } else {
      keep.push_back(l);
    }
  }
  if (!found) throw std::invalid_argument("qubit " + std::to_string(q) + " is not in the register");
  return partial_trace(rho, keep);
}

DensityOperator lose_qubit(const PureState& psi, Label q) { return lose_qubit(DensityOperator(psi), q); }

std::string RecoveryRecipe::str() const {
  std::ostringstream out;
  out << "lost " << lost << ": measure " << helpers[0].first << " in " << basis_char(helpers[0].second) << ", "
      << helpers[1].first << " in " << basis_char(helpers[1].second) << "; output " << output << "; corrections";
  for (const auto& [s, c] : corrections) out << " (" << s.first << s.second << ")->" << letter_char(c.at(output));
  out << "; frame " << frame_name;
  return out.str();
}

const RecoveryRecipe& recovery_recipe(Label lost) {
  if (lost == kAncilla) throw std::invalid_argument("qubit 3 is consumed by the encoding and cannot be lost");
  if (!is_code_label(lost)) throw std::invalid_argument("lost qubit must be one of 1, 2, 4, 5");
  static std::mutex mu;
  static std::map<Label, RecoveryRecipe> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(lost);
  if (it == cache.end()) it = cache.emplace(lost, derive_recipe(lost)).first;
  return it->second;
}

RecoveryResult recover(const DensityOperator& rho, const RecoveryRecipe& recipe, std::optional<OutcomePair> forced) {
  if (!forced) {
    std::mt19937_64 rng(0);
    return recover(rho, recipe, rng);
  }
  const auto branch = measure_helpers(rho, recipe, *forced);
  if (!branch) throw std::domain_error("forced recovery branch has zero probability");
  return {*forced, branch->probability, correct_branch(branch->output, recipe, *forced)};
}

RecoveryResult recover(const DensityOperator& rho, const RecoveryRecipe& recipe, std::mt19937_64& rng) {
  const auto ma = projective_measure(rho, recipe.helpers[0].first, recipe.helpers[0].second, rng);
  const auto mb = projective_measure(ma.post_state, recipe.helpers[1].first, recipe.helpers[1].second, rng);
  const OutcomePair s{ma.outcome, mb.outcome};
  return {s, ma.probability * mb.probability, correct_branch(mb.post_state, recipe, s)};
}

DensityOperator recover_averaged(const DensityOperator& rho, const RecoveryRecipe& recipe) {
  Matrix sum = Matrix::Zero(2, 2);
  for (const auto& [s, c] : recipe.corrections) {
    const auto branch = measure_helpers(rho, recipe, s);
    if (!branch) continue;
    sum += branch->probability * correct_branch(branch->output, recipe, s).matrix();
  }
  return DensityOperator({recipe.output}, sum);
}

RecoveryResult decode_no_loss(const DensityOperator& rho, std::optional<OutcomePair> forced) {
  return recover(lose_qubit(rho, 4), recovery_recipe(4), forced);
}

DensityOperator decode_no_loss(const DensityOperator& rho) {
  return recover_averaged(lose_qubit(rho, 4), recovery_recipe(4));
}

}  // namespace graphcode
