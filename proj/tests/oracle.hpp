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

// Hand-rolled reference constructions for the tests. Nothing here calls the
// library, so agreement with it is an independent check.

#ifndef GRAPHCODE_TESTS_ORACLE_HPP
#define GRAPHCODE_TESTS_ORACLE_HPP

#include <cmath>
#include <complex>
#include <initializer_list>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using cplx = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;

inline const double kR2 = 1.0 / std::sqrt(2.0);
inline const cplx kI{0.0, 1.0};

inline Vec ket(std::initializer_list<cplx> amps) {
  Vec v(static_cast<Eigen::Index>(amps.size()));
  Eigen::Index i = 0;
  for (cplx a : amps) v(i++) = a;
  return v;
}

inline Vec zero() { return ket({1, 0}); }
inline Vec one() { return ket({0, 1}); }
inline Vec plus() { return ket({kR2, kR2}); }
inline Vec minus() { return ket({kR2, -kR2}); }
inline Vec plus_y() { return ket({kR2, kR2 * kI}); }
inline Vec minus_y() { return ket({kR2, -kR2 * kI}); }

inline Vec kron(const Vec& a, const Vec& b) {
  Vec out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

inline Vec kron(std::initializer_list<Vec> factors) {
  Vec out = ket({1});
  for (const auto& f : factors) out = kron(out, f);
  return out;
}

inline Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  }
  return out;
}

inline Vec phi_plus() { return kR2 * (kron(zero(), zero()) + kron(one(), one())); }
inline Vec phi_minus() { return kR2 * (kron(zero(), zero()) - kron(one(), one())); }
inline Vec psi_plus() { return kR2 * (kron(zero(), one()) + kron(one(), zero())); }
inline Vec psi_minus() { return kR2 * (kron(zero(), one()) - kron(one(), zero())); }

inline Mat pauli(char c) {
  Mat m = Mat::Zero(2, 2);
  switch (c) {
    case 'I':
      m << 1, 0, 0, 1;
      break;
    case 'X':
      m << 0, 1, 1, 0;
      break;
    case 'Y':
      m << 0, -kI, kI, 0;
      break;
    case 'Z':
      m << 1, 0, 0, -1;
      break;
  }
  return m;
}

/// Dense operator for a letter word, leftmost letter most significant.
inline Mat word(const std::string& w) {
  Mat out = Mat::Identity(1, 1);
  for (char c : w) out = kron(out, pauli(c));
  return out;
}

/// Amplitudes written in qubit order `from` re-expressed in order `to`.
inline Vec permute(const Vec& v, const std::vector<int>& from, const std::vector<int>& to) {
  const int n = static_cast<int>(from.size());
  Vec out(v.size());
  for (Eigen::Index idx = 0; idx < v.size(); ++idx) {
    Eigen::Index target = 0;
    for (int k = 0; k < n; ++k) {
      int pos = 0;
      while (from[pos] != to[k]) ++pos;
      const int bit = static_cast<int>((idx >> (n - 1 - pos)) & 1);
      target |= static_cast<Eigen::Index>(bit) << (n - 1 - k);
    }
    out(target) = v(idx);
  }
  return out;
}

inline double fidelity(const Vec& a, const Vec& b) { return std::abs(a.normalized().dot(b.normalized())); }

inline Vec random_state(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> g;
  Vec v(Eigen::Index{1} << n);
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = cplx(g(rng), g(rng));
  return v.normalized();
}

}  // namespace oracle

#endif  // GRAPHCODE_TESTS_ORACLE_HPP
