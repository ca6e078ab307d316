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

#ifndef GRAPHCODE_PAULI_HPP
#define GRAPHCODE_PAULI_HPP

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "graphcode/kernel.hpp"

namespace graphcode {

enum class Letter : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char letter_char(Letter l);
Letter parse_letter(char c);
Matrix letter_matrix(Letter l);

// A phased Pauli word i^k * P_1 (x) P_2 ... over labelled qubits. Identity
// letters are not stored, so two strings compare equal regardless of which
// identity positions were spelled out.
class PauliString {
 public:
  PauliString() = default;
  PauliString(std::map<Label, Letter> letters, int phase_exponent = 0);

  /// Parses "Y1 Z2 Z4 Y5", "-1 Z3", "+i X1 X3", "-X1" or "I" (identity).
  static PauliString parse(std::string_view text);
  /// Builds from a letter word aligned with `labels`, e.g. ("XIXIX", {1,2,3,4,5}).
  static PauliString from_word(std::string_view word, std::span<const Label> labels);
  static PauliString single(Label q, Letter l) { return PauliString({{q, l}}); }

  /// Exponent k of the phase i^k, in [0, 4).
  int phase_exponent() const { return phase_; }
  cplx phase() const;
  const std::map<Label, Letter>& letters() const { return letters_; }
  Letter at(Label q) const;
  std::set<Label> support() const;
  int weight() const { return static_cast<int>(letters_.size()); }
  bool is_identity() const { return letters_.empty(); }
  /// Real phase, so the string is a Hermitian observable.
  bool is_hermitian() const { return phase_ % 2 == 0; }

  PauliString with_phase(int phase_exponent) const;
  PauliString negated() const { return with_phase(phase_ + 2); }

  /// "Y1 Z2 Z4 Y5" with a leading "-1", "+i" or "-i" when the phase is not +1.
  std::string str() const;
  /// Letter word over `labels`, e.g. "XIXIX". Ignores the phase.
  std::string word(std::span<const Label> labels) const;

  Matrix dense(std::span<const Label> labels) const;
  /// Observable over the string's support; requires a Hermitian string.
  Observable observable() const;

  friend bool operator==(const PauliString&, const PauliString&) = default;

 private:
  std::map<Label, Letter> letters_;
  int phase_ = 0;
};

PauliString operator*(const PauliString& p, const PauliString& q);
bool commutes(const PauliString& p, const PauliString& q);

double expectation(const PureState& psi, const PauliString& p);
double expectation(const DensityOperator& rho, const PauliString& p);
PureState apply_pauli(const PureState& psi, const PauliString& p);
DensityOperator apply_pauli(const DensityOperator& rho, const PauliString& p);

struct CliffordGate {
  enum class Kind { CZ, H, S, A, B };

  Kind kind;
  Label target;
  /// Second qubit of CZ; unused otherwise.
  Label partner = 0;

  static CliffordGate cz(Label a, Label b) { return {Kind::CZ, a, b}; }
  static CliffordGate h(Label q) { return {Kind::H, q}; }
  static CliffordGate s(Label q) { return {Kind::S, q}; }
  static CliffordGate a(Label q) { return {Kind::A, q}; }
  static CliffordGate b(Label q) { return {Kind::B, q}; }

  std::vector<Label> targets() const;
  Matrix matrix() const;
  std::string str() const;

  friend bool operator==(const CliffordGate&, const CliffordGate&) = default;
};

/// g p g^dagger.
PauliString conjugate_pauli(const CliffordGate& g, const PauliString& p);
/// Applies the gates in order: the first gate acts first.
PauliString conjugate_pauli(std::span<const CliffordGate> circuit, const PauliString& p);

PureState apply_gates(const PureState& psi, std::span<const CliffordGate> circuit);

/// CZ(1,3) CZ(2,3) CZ(4,3) CZ(5,3): joins the ancilla to every code qubit.
std::vector<CliffordGate> encoder_circuit();
/// O -> C O C^dagger for the encoder circuit C (the "tilde" map).
PauliString encoder_conjugate(const PauliString& p);
/// Expands an ancilla operator into the five-qubit resource frame.
/// Throws std::invalid_argument unless p is supported on qubit 3 only.
PauliString expand_logical(const PauliString& p);
/// p * s. Acts like p on every state stabilised by s.
PauliString reshape_by_stabilizer(const PauliString& p, const PauliString& s);

}  // namespace graphcode

#endif  // GRAPHCODE_PAULI_HPP
