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

#include "graphcode/pauli.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace graphcode {

namespace {

int mod4(int k) { return ((k % 4) + 4) % 4; }

// a * b = i^phase * letter
std::pair<int, Letter> multiply_letters(Letter a, Letter b) {
  if (a == Letter::I) return {0, b};
  if (b == Letter::I) return {0, a};
  if (a == b) return {0, Letter::I};
  const int ia = static_cast<int>(a);
  const int ib = static_cast<int>(b);
  // X=1, Y=2, Z=3: cyclic successor gives +i.
  const Letter c = static_cast<Letter>(6 - ia - ib);
  const bool cyclic = (ib - ia + 3) % 3 == 1;
  return {cyclic ? 1 : 3, c};
}

struct Image {
  int phase;
  Letter letter;
};

Image single_qubit_image(CliffordGate::Kind kind, Letter l) {
  using K = CliffordGate::Kind;
  if (l == Letter::I) return {0, Letter::I};
  switch (kind) {
    case K::H:
      if (l == Letter::X) return {0, Letter::Z};
      if (l == Letter::Z) return {0, Letter::X};
      return {2, Letter::Y};
    case K::S:
      if (l == Letter::X) return {0, Letter::Y};
      if (l == Letter::Y) return {2, Letter::X};
      return {0, Letter::Z};
    case K::A:
      if (l == Letter::X) return {2, Letter::Y};
      if (l == Letter::Y) return {0, Letter::X};
      return {0, Letter::Z};
    case K::B:
      if (l == Letter::Y) return {0, Letter::Z};
      if (l == Letter::Z) return {2, Letter::Y};
      return {0, Letter::X};
    case K::CZ:
      break;
  }
  throw std::logic_error("single_qubit_image: not a single-qubit gate");
}

PauliString image_of_letter(const CliffordGate& g, Label q, Letter l) {
  if (g.kind == CliffordGate::Kind::CZ) {
    if (q != g.target && q != g.partner) return PauliString::single(q, l);
    const Label other = q == g.target ? g.partner : g.target;
    if (l == Letter::X || l == Letter::Y) return PauliString({{q, l}, {other, Letter::Z}});
    return PauliString::single(q, l);
  }
  if (q != g.target) return PauliString::single(q, l);
  const Image im = single_qubit_image(g.kind, l);
  return PauliString({{q, im.letter}}, im.phase);
}

}  // namespace

char letter_char(Letter l) {
  switch (l) {
    case Letter::I:
      return 'I';
    case Letter::X:
      return 'X';
    case Letter::Y:
      return 'Y';
    case Letter::Z:
      return 'Z';
  }
  return '?';
}

Letter parse_letter(char c) {
  switch (std::toupper(static_cast<unsigned char>(c))) {
    case 'I':
      return Letter::I;
    case 'X':
      return Letter::X;
    case 'Y':
      return Letter::Y;
    case 'Z':
      return Letter::Z;
    default:
      throw std::invalid_argument(std::string("unknown Pauli letter '") + c + "'");
  }
}

Matrix letter_matrix(Letter l) {
  switch (l) {
    case Letter::I:
      return gates::identity();
    case Letter::X:
      return gates::pauli_x();
    case Letter::Y:
      return gates::pauli_y();
    case Letter::Z:
      return gates::pauli_z();
  }
  return gates::identity();
}

PauliString::PauliString(std::map<Label, Letter> letters, int phase_exponent) : phase_(mod4(phase_exponent)) {
  for (const auto& [q, l] : letters) {
    if (l != Letter::I) letters_.emplace(q, l);
  }
}

PauliString PauliString::parse(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string token;
  std::map<Label, Letter> letters;
  int phase = 0;
  bool first = true;
  bool any = false;
  while (in >> token) {
    if (first) {
      first = false;
      if (token == "+1" || token == "1" || token == "+") continue;
      if (token == "-1" || token == "-") {
        phase = 2;
        continue;
      }
      if (token == "+i" || token == "i") {
        phase = 1;
        continue;
      }
      if (token == "-i") {
        phase = 3;
        continue;
      }
      if (token.size() > 1 && (token[0] == '-' || token[0] == '+')) {
        if (token[0] == '-') phase = 2;
        token.erase(0, 1);
      }
    }
    const Letter l = parse_letter(token[0]);
    any = true;
    if (token.size() == 1) {
      if (l != Letter::I) throw std::invalid_argument("Pauli letter '" + token + "' needs a qubit label");
      continue;
    }
    std::size_t used = 0;
    int q = 0;
    try {
      q = std::stoi(token.substr(1), &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad qubit label in Pauli token '" + token + "'");
    }
    if (used != token.size() - 1 || q <= 0) {
      throw std::invalid_argument("bad qubit label in Pauli token '" + token + "'");
    }
    if (letters.contains(q)) throw std::invalid_argument("qubit " + std::to_string(q) + " appears twice");
    letters.emplace(q, l);
  }
  if (!any) throw std::invalid_argument("empty Pauli string");
  return PauliString(std::move(letters), phase);
}

PauliString PauliString::from_word(std::string_view word, std::span<const Label> labels) {
  if (word.size() != labels.size()) throw std::invalid_argument("Pauli word length does not match labels");
  std::map<Label, Letter> letters;
  for (std::size_t i = 0; i < word.size(); ++i) letters[labels[i]] = parse_letter(word[i]);
  return PauliString(std::move(letters));
}

cplx PauliString::phase() const {
  static const cplx table[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return table[phase_];
}

Letter PauliString::at(Label q) const {
  auto it = letters_.find(q);
  return it == letters_.end() ? Letter::I : it->second;
}

std::set<Label> PauliString::support() const {
  std::set<Label> s;
  for (const auto& [q, l] : letters_) s.insert(q);
  return s;
}

PauliString PauliString::with_phase(int phase_exponent) const {
  PauliString out = *this;
  out.phase_ = mod4(phase_exponent);
  return out;
}

std::string PauliString::str() const {
  static const char* prefix[4] = {"", "+i ", "-1 ", "-i "};
  std::string out = prefix[phase_];
  if (letters_.empty()) return out + "I";
  bool first = true;
  for (const auto& [q, l] : letters_) {
    if (!first) out += ' ';
    first = false;
    out += letter_char(l);
    out += std::to_string(q);
  }
  return out;
}

std::string PauliString::word(std::span<const Label> labels) const {
  std::string out;
  for (Label q : labels) out += letter_char(at(q));
  return out;
}

Matrix PauliString::dense(std::span<const Label> labels) const {
  for (const auto& [q, l] : letters_) {
    if (std::find(labels.begin(), labels.end(), q) == labels.end()) {
      throw std::invalid_argument("Pauli string support exceeds the register");
    }
  }
  Matrix out = Matrix::Identity(1, 1) * phase();
  for (Label q : labels) {
    const Matrix m = letter_matrix(at(q));
    Matrix next(out.rows() * 2, out.cols() * 2);
    for (Eigen::Index i = 0; i < out.rows(); ++i) {
      for (Eigen::Index j = 0; j < out.cols(); ++j) next.block(2 * i, 2 * j, 2, 2) = out(i, j) * m;
    }
    out = std::move(next);
  }
  return out;
}

Observable PauliString::observable() const {
  if (!is_hermitian()) throw std::invalid_argument("Pauli string with imaginary phase is not an observable");
  const auto s = support();
  std::vector<Label> targets(s.begin(), s.end());
  return Observable(targets, dense(targets));
}

PauliString operator*(const PauliString& p, const PauliString& q) {
  std::map<Label, Letter> letters = p.letters();
  int phase = p.phase_exponent() + q.phase_exponent();
  for (const auto& [label, l] : q.letters()) {
    const auto [k, c] = multiply_letters(p.at(label), l);
    phase += k;
    letters[label] = c;
  }
  return PauliString(std::move(letters), phase);
}

bool commutes(const PauliString& p, const PauliString& q) {
  int anticommuting = 0;
  for (const auto& [label, l] : p.letters()) {
    const Letter m = q.at(label);
    if (m != Letter::I && m != l) ++anticommuting;
  }
  return anticommuting % 2 == 0;
}

double expectation(const PureState& psi, const PauliString& p) {
  if (p.is_identity()) return p.phase().real();
  return expectation(psi, p.observable());
}

double expectation(const DensityOperator& rho, const PauliString& p) {
  if (p.is_identity()) return p.phase().real();
  return expectation(rho, p.observable());
}

PureState apply_pauli(const PureState& psi, const PauliString& p) {
  if (p.is_identity()) return PureState(psi.labels(), p.phase() * psi.amplitudes());
  const auto s = p.support();
  std::vector<Label> targets(s.begin(), s.end());
  return apply_unitary(psi, p.dense(targets), targets);
}

DensityOperator apply_pauli(const DensityOperator& rho, const PauliString& p) {
  if (p.is_identity()) return rho;
  const auto s = p.support();
  std::vector<Label> targets(s.begin(), s.end());
  return apply_unitary(rho, p.dense(targets), targets);
}

std::vector<Label> CliffordGate::targets() const {
  if (kind == Kind::CZ) return {target, partner};
  return {target};
}

Matrix CliffordGate::matrix() const {
  switch (kind) {
    case Kind::CZ:
      return gates::controlled_z();
    case Kind::H:
      return gates::hadamard();
    case Kind::S:
      return gates::phase_s();
    case Kind::A:
      return gates::sqrt_minus_iz();
    case Kind::B:
      return gates::sqrt_minus_ix();
  }
  return gates::identity();
}

std::string CliffordGate::str() const {
  switch (kind) {
    case Kind::CZ:
      return "CZ(" + std::to_string(target) + "," + std::to_string(partner) + ")";
    case Kind::H:
      return "H(" + std::to_string(target) + ")";
    case Kind::S:
      return "S(" + std::to_string(target) + ")";
    case Kind::A:
      return "A(" + std::to_string(target) + ")";
    case Kind::B:
      return "B(" + std::to_string(target) + ")";
  }
  return "?";
}

PauliString conjugate_pauli(const CliffordGate& g, const PauliString& p) {
  if (g.kind == CliffordGate::Kind::CZ && g.target == g.partner) {
    throw std::invalid_argument("CZ needs two distinct qubits");
  }
  PauliString out({}, p.phase_exponent());
  for (const auto& [q, l] : p.letters()) out = out * image_of_letter(g, q, l);
  return out;
}

PauliString conjugate_pauli(std::span<const CliffordGate> circuit, const PauliString& p) {
  PauliString out = p;
  for (const auto& g : circuit) out = conjugate_pauli(g, out);
  return out;
}

PureState apply_gates(const PureState& psi, std::span<const CliffordGate> circuit) {
  PureState out = psi;
  for (const auto& g : circuit) out = apply_unitary(out, g.matrix(), g.targets());
  return out;
}

std::vector<CliffordGate> encoder_circuit() {
  return {CliffordGate::cz(1, 3), CliffordGate::cz(2, 3), CliffordGate::cz(4, 3), CliffordGate::cz(5, 3)};
}

PauliString encoder_conjugate(const PauliString& p) { return conjugate_pauli(encoder_circuit(), p); }

PauliString expand_logical(const PauliString& p) {
  for (const auto& [q, l] : p.letters()) {
    if (q != 3) throw std::invalid_argument("expand_logical: operator must act on the ancilla (qubit 3) only");
  }
  return encoder_conjugate(p);
}

PauliString reshape_by_stabilizer(const PauliString& p, const PauliString& s) { return p * s; }

}  // namespace graphcode
