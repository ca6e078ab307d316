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

#include "graphcode/witness.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace graphcode {

namespace {

/// Positional word such as "X~IX~IX~"; a '~' marks the letter before it.
WitnessTerm term(Rational c, std::string_view word, const std::vector<Label>& qubits) {
  WitnessTerm t{c, {}, {}};
  std::map<Label, Letter> letters;
  std::size_t pos = 0;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (word[i] == '~') {
      if (pos == 0) throw std::logic_error("tilde without a letter");
      t.tilde.insert(qubits.at(pos - 1));
      continue;
    }
    letters[qubits.at(pos)] = parse_letter(word[i]);
    ++pos;
  }
  if (pos != qubits.size()) throw std::logic_error("witness word length does not match its qubits");
  t.pauli = PauliString(std::move(letters));
  return t;
}

/// Adds a tilde on every site of `mask` carrying a non-identity letter.
WitnessTerm with_tilde_on(WitnessTerm t, std::initializer_list<Label> mask) {
  for (Label q : mask) {
    if (t.pauli.at(q) != Letter::I) t.tilde.insert(q);
  }
  return t;
}

WitnessSpec resource5(WitnessVariant v, const std::vector<Label>& q) {
  // Two settings: every X term comes from X1 X2 X3 X4 X5, every Y term from Z1 Y2 Y3 Y4 Z5.
  const bool printed = v == WitnessVariant::as_printed;
  const Rational cx = printed ? Rational(1, 8) : Rational(1, 4);
  const Rational cy = printed ? Rational(1, 4) : Rational(1, 2);
  WitnessSpec w{"resource5", v, q, Rational(9, 4), {}};
  for (const char* s : {"X~IX~IX~", "X~IX~X~I", "X~X~IX~X~", "X~X~III", "IX~X~IX~", "IX~X~X~I", "IIIX~X~"}) {
    w.terms.push_back(term(cx, s, q));
  }
  for (const char* s : {"ZY~IY~Z", "ZY~Y~II", "IIY~Y~Z"}) w.terms.push_back(term(cy, s, q));
  return w;
}

WitnessSpec box4(WitnessVariant v, const std::vector<Label>& q) {
  WitnessSpec w{"box4", v, q, Rational(2), {}};
  const Rational c(1, 2);
  if (v == WitnessVariant::as_printed) {
    // The literal third term has three letters; the missing one is read as I.
    for (const char* s : {"ZIX~X~", "ZZ~X~I", "IX~X~I", "X~X~IZ", "X~X~II", "IX~Z~Z"}) w.terms.push_back(term(c, s, q));
  } else {
    // K5, K4, K4 K5, K1, K1 K2, K2 of the box graph.
    for (const char* s : {"ZZ~IX~", "ZZ~X~I", "IIX~X~", "X~IZ~Z", "X~X~II", "IX~Z~Z"}) w.terms.push_back(term(c, s, q));
  }
  return w;
}

WitnessSpec ghz4(WitnessVariant v, const std::vector<Label>& q) {
  WitnessSpec w{"ghz4", v, q, Rational(7, 4), {}};
  std::vector<WitnessTerm> terms{term(Rational(1), "ZZZ~Z~", q)};
  for (const char* s : {"XXII", "XIXI", "XIIX", "IXXI", "IXIX", "IIXX", "XXXX"}) terms.push_back(term(Rational(1, 4), s, q));
  if (v == WitnessVariant::calibrated) {
    for (auto& t : terms) t = with_tilde_on(std::move(t), {q[2], q[3]});
  }
  w.terms = std::move(terms);
  return w;
}

WitnessSpec pair2(WitnessVariant v, const std::vector<Label>& q) {
  WitnessSpec w{"pair2", v, q, Rational(1), {}};
  w.terms.push_back(term(Rational(1), "Y~Z", q));
  w.terms.push_back(term(Rational(1), "XX", q));
  return w;
}

}  // namespace

Rational::Rational(long n, long d) {
  if (d == 0) throw std::invalid_argument("zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  const long g = std::gcd(n, d);
  num = g ? n / g : n;
  den = g ? d / g : d;
}

std::string Rational::str() const { return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den); }

int WitnessTerm::sign() const {
  int s = 1;
  for (Label q : tilde) {
    if (pauli.at(q) != Letter::I) s = -s;
  }
  return s;
}

std::string WitnessTerm::word(const std::vector<Label>& qubits) const {
  std::string out;
  for (Label q : qubits) {
    const Letter l = pauli.at(q);
    out += letter_char(l);
    if (l != Letter::I && tilde.contains(q)) out += '~';
  }
  return out;
}

std::string variant_name(WitnessVariant v) { return v == WitnessVariant::calibrated ? "calibrated" : "as-printed"; }

WitnessVariant parse_variant(std::string_view name) {
  if (name == "calibrated") return WitnessVariant::calibrated;
  if (name == "as-printed" || name == "as_printed") return WitnessVariant::as_printed;
  throw std::invalid_argument("unknown witness variant '" + std::string(name) + "'");
}

std::vector<std::string> WitnessSpec::settings() const {
  std::vector<std::string> out;
  for (const auto& t : terms) {
    const std::string need = t.pauli.word(qubits);
    bool placed = false;
    for (auto& s : out) {
      bool ok = true;
      for (std::size_t i = 0; i < need.size() && ok; ++i) ok = need[i] == 'I' || s[i] == '?' || s[i] == need[i];
      if (!ok) continue;
      for (std::size_t i = 0; i < need.size(); ++i) {
        if (need[i] != 'I') s[i] = need[i];
      }
      placed = true;
      break;
    }
    if (!placed) {
      std::string s = need;
      std::replace(s.begin(), s.end(), 'I', '?');
      out.push_back(s);
    }
  }
  for (auto& s : out) std::replace(s.begin(), s.end(), '?', 'Z');
  return out;
}

std::size_t WitnessSpec::setting_of(std::size_t k) const {
  const auto all = settings();
  const std::string need = terms.at(k).pauli.word(qubits);
  for (std::size_t j = 0; j < all.size(); ++j) {
    bool ok = true;
    for (std::size_t i = 0; i < need.size() && ok; ++i) ok = need[i] == 'I' || all[j][i] == need[i];
    if (ok) return j;
  }
  throw std::logic_error("witness term has no measurement setting");
}

WitnessSpec WitnessSpec::conjugated_by(const PauliString& p) const {
  WitnessSpec out = *this;
  for (auto& t : out.terms) {
    for (const auto& [q, l] : t.pauli.letters()) {
      const Letter pl = p.at(q);
      if (pl == Letter::I || pl == l) continue;
      if (t.tilde.contains(q)) {
        t.tilde.erase(q);
      } else {
        t.tilde.insert(q);
      }
    }
  }
  return out;
}

Matrix WitnessSpec::dense() const {
  const Eigen::Index dim = Eigen::Index{1} << qubits.size();
  Matrix w = constant.value() * Matrix::Identity(dim, dim);
  for (const auto& t : terms) w -= t.coefficient.value() * t.sign() * t.pauli.dense(qubits);
  return w;
}

std::string WitnessSpec::str() const {
  std::ostringstream out;
  out << constant.str() << " I";
  for (const auto& t : terms) out << " - " << t.coefficient.str() << " " << t.word(qubits);
  return out.str();
}

WitnessSpec builtin_witness(std::string_view name, WitnessVariant variant, std::optional<std::vector<Label>> qubits) {
  auto pick = [&](std::vector<Label> def) {
    if (!qubits) return def;
    if (qubits->size() != def.size()) {
      throw std::invalid_argument("witness " + std::string(name) + " needs " + std::to_string(def.size()) + " qubits");
    }
    return *qubits;
  };
  if (name == "resource5") return resource5(variant, pick({1, 2, 3, 4, 5}));
  if (name == "box4") return box4(variant, pick({1, 2, 4, 5}));
  if (name == "ghz4") return ghz4(variant, pick({1, 2, 4, 5}));
  if (name == "pair2") return pair2(variant, pick({1, 2}));
  throw std::invalid_argument("unknown witness '" + std::string(name) + "' (resource5, box4, ghz4, pair2)");
}

std::vector<WitnessSpec> builtin_witnesses(WitnessVariant variant) {
  return {builtin_witness("resource5", variant), builtin_witness("box4", variant), builtin_witness("ghz4", variant),
          builtin_witness("pair2", variant)};
}

double witness_value(const WitnessSpec& w, const std::vector<double>& term_values) {
  if (term_values.size() != w.terms.size()) throw std::invalid_argument("witness_value: wrong number of term values");
  double v = w.constant.value();
  for (std::size_t k = 0; k < term_values.size(); ++k) v -= w.terms[k].coefficient.value() * term_values[k];
  return v;
}

WitnessEvaluation evaluate_witness(const DensityOperator& rho, const WitnessSpec& w) {
  const DensityOperator reduced =
      rho.num_qubits() == static_cast<int>(w.qubits.size()) ? rho : partial_trace(rho, w.qubits);
  WitnessEvaluation out{0.0, {}};
  for (const auto& t : w.terms) out.term_values.push_back(t.sign() * expectation(reduced, t.pauli));
  out.value = witness_value(w, out.term_values);
  return out;
}

WitnessEvaluation evaluate_witness(const PureState& psi, const WitnessSpec& w) {
  return evaluate_witness(DensityOperator(psi), w);
}

double fidelity_lower_bound(double value) { return std::clamp((1.0 - value) / 2.0, 0.0, 1.0); }

}  // namespace graphcode
