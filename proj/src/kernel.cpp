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

#include "graphcode/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace graphcode {

namespace {

using Index = std::uint64_t;

void check_labels(const std::vector<Label>& labels) {
  if (labels.size() > static_cast<std::size_t>(kMaxQubits)) {
    throw std::invalid_argument("register exceeds " + std::to_string(kMaxQubits) + " qubits");
  }
  std::vector<Label> sorted = labels;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument("duplicate qubit label in register");
  }
}

std::size_t position_of(std::span<const Label> labels, Label q) {
  auto it = std::find(labels.begin(), labels.end(), q);
  if (it == labels.end()) {
    throw std::invalid_argument("qubit " + std::to_string(q) + " is not in the register");
  }
  return static_cast<std::size_t>(it - labels.begin());
}

// Bit of register position `pos` inside an n-qubit index (position 0 is the MSB).
inline int bit_at(Index index, std::size_t pos, std::size_t n) {
  return static_cast<int>((index >> (n - 1 - pos)) & 1u);
}

// Maps index over `from` ordering onto the index over `to` ordering.
std::vector<Index> permutation_map(std::span<const Label> from, std::span<const Label> to) {
  const std::size_t n = from.size();
  if (to.size() != n) throw std::invalid_argument("reorder: label sets differ in size");
  std::vector<std::size_t> src(n);
  for (std::size_t j = 0; j < n; ++j) src[j] = position_of(from, to[j]);
  const Index dim = Index{1} << n;
  std::vector<Index> map(dim);
  for (Index i = 0; i < dim; ++i) {
    Index out = 0;
    for (std::size_t j = 0; j < n; ++j) out = (out << 1) | static_cast<Index>(bit_at(i, src[j], n));
    map[i] = out;
  }
  return map;
}

Vector eigenvector(Basis basis, int outcome) {
  const double r = 1.0 / std::numbers::sqrt2;
  Vector v(2);
  const double sign = outcome == 0 ? 1.0 : -1.0;
  switch (basis) {
    case Basis::Z:
      v << (outcome == 0 ? 1.0 : 0.0), (outcome == 0 ? 0.0 : 1.0);
      break;
    case Basis::X:
      v << r, sign * r;
      break;
    case Basis::Y:
      v << r, cplx(0.0, sign * r);
      break;
  }
  return v;
}

void check_outcome(int outcome) {
  if (outcome != 0 && outcome != 1) throw std::invalid_argument("measurement outcome must be 0 or 1");
}

void check_targets(std::span<const Label> targets, std::span<const Label> labels, Eigen::Index dim) {
  std::vector<Label> t(targets.begin(), targets.end());
  check_labels(t);
  for (Label q : targets) position_of(labels, q);
  if (dim != (Eigen::Index{1} << targets.size())) {
    throw std::invalid_argument("operator dimension does not match the number of targets");
  }
}

}  // namespace

QubitRole role_of(Label q) {
  switch (q) {
    case 1:
    case 5:
      return QubitRole::polarization;
    case 2:
    case 4:
      return QubitRole::path;
    case 3:
      return QubitRole::ancilla;
    default:
      return QubitRole::unspecified;
  }
}

std::string role_name(QubitRole role) {
  switch (role) {
    case QubitRole::polarization:
      return "polarization";
    case QubitRole::path:
      return "path";
    case QubitRole::ancilla:
      return "ancilla";
    case QubitRole::unspecified:
      break;
  }
  return "unspecified";
}

char basis_char(Basis b) {
  switch (b) {
    case Basis::X:
      return 'X';
    case Basis::Y:
      return 'Y';
    case Basis::Z:
      return 'Z';
  }
  return '?';
}

Basis parse_basis(char c) {
  switch (c) {
    case 'X':
    case 'x':
      return Basis::X;
    case 'Y':
    case 'y':
      return Basis::Y;
    case 'Z':
    case 'z':
      return Basis::Z;
    default:
      throw std::invalid_argument(std::string("unknown measurement basis '") + c + "'");
  }
}

// ---------------------------------------------------------------------------
// PureState

PureState::PureState(std::vector<Label> labels, Vector amplitudes)
    : labels_(std::move(labels)), amplitudes_(std::move(amplitudes)) {
  check_labels(labels_);
  if (amplitudes_.size() != (Eigen::Index{1} << labels_.size())) {
    throw std::invalid_argument("amplitude vector length must be 2^num_qubits");
  }
  if (std::abs(amplitudes_.squaredNorm() - 1.0) > kNormTolerance) {
    throw std::invalid_argument("pure state is not normalised");
  }
}

PureState PureState::basis_state(std::vector<Label> labels, std::span<const int> bits) {
  if (bits.size() != labels.size()) throw std::invalid_argument("basis_state: one bit per label required");
  Index index = 0;
  for (int b : bits) {
    check_outcome(b);
    index = (index << 1) | static_cast<Index>(b);
  }
  Vector amps = Vector::Zero(Eigen::Index{1} << labels.size());
  amps(static_cast<Eigen::Index>(index)) = 1.0;
  return PureState(std::move(labels), std::move(amps));
}

PureState PureState::eigenstate(Label label, Basis basis, int outcome) {
  check_outcome(outcome);
  return PureState({label}, eigenvector(basis, outcome));
}

PureState PureState::reordered(std::span<const Label> order) const {
  const auto map = permutation_map(labels_, order);
  Vector out(amplitudes_.size());
  for (Index i = 0; i < map.size(); ++i) out(static_cast<Eigen::Index>(map[i])) = amplitudes_(static_cast<Eigen::Index>(i));
  return PureState(std::vector<Label>(order.begin(), order.end()), std::move(out));
}

// ---------------------------------------------------------------------------
// DensityOperator

DensityOperator::DensityOperator(std::vector<Label> labels, Matrix matrix)
    : labels_(std::move(labels)), matrix_(std::move(matrix)) {
  check_labels(labels_);
  const Eigen::Index dim = Eigen::Index{1} << labels_.size();
  if (matrix_.rows() != dim || matrix_.cols() != dim) {
    throw std::invalid_argument("density matrix must be 2^n x 2^n");
  }
  if (!is_hermitian(matrix_)) throw std::invalid_argument("density matrix is not Hermitian");
  if (std::abs(matrix_.trace() - cplx(1.0)) > kNormTolerance) {
    throw std::invalid_argument("density matrix trace is not 1");
  }
  if (min_eigenvalue() < -1e-9) throw std::invalid_argument("density matrix is not positive semidefinite");
}

DensityOperator::DensityOperator(const PureState& psi)
    : DensityOperator(psi.labels(), psi.amplitudes() * psi.amplitudes().adjoint()) {}

DensityOperator DensityOperator::maximally_mixed(std::vector<Label> labels) {
  const Eigen::Index dim = Eigen::Index{1} << labels.size();
  return DensityOperator(std::move(labels), Matrix::Identity(dim, dim) / static_cast<double>(dim));
}

DensityOperator DensityOperator::reordered(std::span<const Label> order) const {
  const auto map = permutation_map(labels_, order);
  Matrix out(matrix_.rows(), matrix_.cols());
  for (Index r = 0; r < map.size(); ++r) {
    for (Index c = 0; c < map.size(); ++c) {
      out(static_cast<Eigen::Index>(map[r]), static_cast<Eigen::Index>(map[c])) =
          matrix_(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
    }
  }
  return DensityOperator(std::vector<Label>(order.begin(), order.end()), std::move(out));
}

double DensityOperator::purity() const { return (matrix_ * matrix_).trace().real(); }

double DensityOperator::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(matrix_, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

// ---------------------------------------------------------------------------
// Observable

Observable::Observable(std::vector<Label> targets, Matrix matrix)
    : targets_(std::move(targets)), matrix_(std::move(matrix)) {
  check_labels(targets_);
  const Eigen::Index dim = Eigen::Index{1} << targets_.size();
  if (matrix_.rows() != dim || matrix_.cols() != dim) {
    throw std::invalid_argument("observable dimension does not match its targets");
  }
  if (!is_hermitian(matrix_)) throw std::invalid_argument("observable is not Hermitian");
}

double Observable::max_abs_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(matrix_, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().cwiseAbs().maxCoeff();
}

// ---------------------------------------------------------------------------
// Gates

namespace gates {

Matrix identity() { return Matrix::Identity(2, 2); }

Matrix pauli_x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

Matrix pauli_y() {
  Matrix m(2, 2);
  m << 0, cplx(0, -1), cplx(0, 1), 0;
  return m;
}

Matrix pauli_z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

Matrix pauli(Basis b) {
  switch (b) {
    case Basis::X:
      return pauli_x();
    case Basis::Y:
      return pauli_y();
    case Basis::Z:
      break;
  }
  return pauli_z();
}

Matrix hadamard() {
  Matrix m(2, 2);
  m << 1, 1, 1, -1;
  return m / std::numbers::sqrt2;
}

Matrix phase_s() {
  Matrix m(2, 2);
  m << 1, 0, 0, cplx(0, 1);
  return m;
}

Matrix sqrt_minus_iz() {
  const cplx w = std::polar(1.0, -std::numbers::pi / 4);
  Matrix m(2, 2);
  m << w, 0, 0, w * cplx(0, -1);
  return m;
}

Matrix sqrt_minus_ix() { return (identity() - cplx(0, 1) * pauli_x()) / std::numbers::sqrt2; }

Matrix controlled_z() {
  Matrix m = Matrix::Identity(4, 4);
  m(3, 3) = -1;
  return m;
}

}  // namespace gates

bool is_unitary(const Matrix& u, double tol) {
  if (u.rows() != u.cols()) return false;
  return (u.adjoint() * u - Matrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff() <= tol;
}

bool is_hermitian(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  if (m.size() == 0) return true;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

Matrix embed(const Matrix& op, std::span<const Label> targets, std::span<const Label> labels) {
  const std::size_t n = labels.size();
  const std::size_t m = targets.size();
  std::vector<std::size_t> pos(m);
  Index target_mask = 0;
  for (std::size_t j = 0; j < m; ++j) {
    pos[j] = position_of(labels, targets[j]);
    target_mask |= Index{1} << (n - 1 - pos[j]);
  }
  const Index dim = Index{1} << n;
  auto sub_index = [&](Index i) {
    Index s = 0;
    for (std::size_t j = 0; j < m; ++j) s = (s << 1) | static_cast<Index>(bit_at(i, pos[j], n));
    return static_cast<Eigen::Index>(s);
  };
  Matrix full = Matrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (Index r = 0; r < dim; ++r) {
    const Eigen::Index sr = sub_index(r);
    for (Index c = 0; c < dim; ++c) {
      if (((r ^ c) & ~target_mask) != 0) continue;
      full(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = op(sr, sub_index(c));
    }
  }
  return full;
}

PureState tensor_product(const PureState& a, const PureState& b) {
  std::vector<Label> labels = a.labels();
  labels.insert(labels.end(), b.labels().begin(), b.labels().end());
  check_labels(labels);
  const Eigen::Index nb = b.amplitudes().size();
  Vector out(a.amplitudes().size() * nb);
  for (Eigen::Index i = 0; i < a.amplitudes().size(); ++i) out.segment(i * nb, nb) = a.amplitudes()(i) * b.amplitudes();
  return PureState(std::move(labels), std::move(out));
}

DensityOperator tensor_product(const DensityOperator& a, const DensityOperator& b) {
  std::vector<Label> labels = a.labels();
  labels.insert(labels.end(), b.labels().begin(), b.labels().end());
  check_labels(labels);
  const Eigen::Index nb = b.matrix().rows();
  const Eigen::Index na = a.matrix().rows();
  Matrix out(na * nb, na * nb);
  for (Eigen::Index i = 0; i < na; ++i) {
    for (Eigen::Index j = 0; j < na; ++j) out.block(i * nb, j * nb, nb, nb) = a.matrix()(i, j) * b.matrix();
  }
  return DensityOperator(std::move(labels), std::move(out));
}

PureState apply_unitary(const PureState& state, const Matrix& u, std::span<const Label> targets) {
  check_targets(targets, state.labels(), u.rows());
  if (!is_unitary(u)) throw std::invalid_argument("apply_unitary: operator is not unitary");
  return PureState(state.labels(), embed(u, targets, state.labels()) * state.amplitudes());
}

DensityOperator apply_unitary(const DensityOperator& rho, const Matrix& u, std::span<const Label> targets) {
  check_targets(targets, rho.labels(), u.rows());
  if (!is_unitary(u)) throw std::invalid_argument("apply_unitary: operator is not unitary");
  const Matrix full = embed(u, targets, rho.labels());
  Matrix out = full * rho.matrix() * full.adjoint();
  out = 0.5 * (out + out.adjoint()).eval();
  return DensityOperator(rho.labels(), std::move(out));
}

DensityOperator apply_filter(const DensityOperator& rho, const Matrix& k, std::span<const Label> targets) {
  check_targets(targets, rho.labels(), k.rows());
  const Matrix full = embed(k, targets, rho.labels());
  Matrix out = full * rho.matrix() * full.adjoint();
  const double tr = out.trace().real();
  if (tr < 1e-12) throw std::domain_error("filter annihilates the state");
  out = (0.5 / tr) * (out + out.adjoint()).eval();
  return DensityOperator(rho.labels(), std::move(out));
}

PureState apply_filter(const PureState& psi, const Matrix& k, std::span<const Label> targets) {
  check_targets(targets, psi.labels(), k.rows());
  Vector out = embed(k, targets, psi.labels()) * psi.amplitudes();
  const double norm = out.norm();
  if (norm * norm < 1e-12) throw std::domain_error("filter annihilates the state");
  return PureState(psi.labels(), out / norm);
}

DensityOperator partial_trace(const DensityOperator& rho, std::span<const Label> keep) {
  if (keep.empty()) throw std::invalid_argument("partial_trace: keep set must be non-empty");
  const auto& labels = rho.labels();
  const std::size_t n = labels.size();
  std::vector<std::size_t> keep_pos;
  for (Label q : keep) keep_pos.push_back(position_of(labels, q));
  std::vector<Label> kept(keep.begin(), keep.end());
  check_labels(kept);
  Index keep_mask = 0;
  for (std::size_t p : keep_pos) keep_mask |= Index{1} << (n - 1 - p);
  auto sub_index = [&](Index i) {
    Index s = 0;
    for (std::size_t p : keep_pos) s = (s << 1) | static_cast<Index>(bit_at(i, p, n));
    return static_cast<Eigen::Index>(s);
  };
  const Index dim = Index{1} << n;
  const Eigen::Index kdim = Eigen::Index{1} << keep.size();
  Matrix out = Matrix::Zero(kdim, kdim);
  for (Index r = 0; r < dim; ++r) {
    for (Index c = 0; c < dim; ++c) {
      if (((r ^ c) & ~keep_mask) != 0) continue;
      out(sub_index(r), sub_index(c)) += rho.matrix()(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
    }
  }
  return DensityOperator(std::move(kept), std::move(out));
}

double expectation(const DensityOperator& rho, const Observable& obs) {
  const Matrix full = embed(obs.matrix(), obs.targets(), rho.labels());
  const cplx value = (rho.matrix() * full).trace();
  if (std::abs(value.imag()) > 1e-9) throw std::logic_error("expectation value is not real");
  return value.real();
}

double expectation(const PureState& psi, const Observable& obs) {
  const Matrix full = embed(obs.matrix(), obs.targets(), psi.labels());
  const cplx value = psi.amplitudes().dot(full * psi.amplitudes());
  if (std::abs(value.imag()) > 1e-9) throw std::logic_error("expectation value is not real");
  return value.real();
}

namespace {

// <e| on `qubit`, identity on the rest: a 2^(n-1) x 2^n matrix.
Matrix branch_contraction(std::span<const Label> labels, Label qubit, Basis basis, int outcome) {
  check_outcome(outcome);
  const std::size_t n = labels.size();
  const std::size_t p = position_of(labels, qubit);
  const Vector bra = eigenvector(basis, outcome).conjugate();
  const Index dim = Index{1} << n;
  Matrix c = Matrix::Zero(static_cast<Eigen::Index>(dim / 2), static_cast<Eigen::Index>(dim));
  for (Index i = 0; i < dim; ++i) {
    const int b = bit_at(i, p, n);
    // Drop bit p from i.
    const Index low = i & ((Index{1} << (n - 1 - p)) - 1);
    const Index high = (i >> (n - p)) << (n - 1 - p);
    c(static_cast<Eigen::Index>(high | low), static_cast<Eigen::Index>(i)) = bra(b);
  }
  return c;
}

std::vector<Label> without(std::span<const Label> labels, Label q) {
  std::vector<Label> out;
  for (Label l : labels)
    if (l != q) out.push_back(l);
  return out;
}

}  // namespace

double outcome_probability(const PureState& psi, Label qubit, Basis basis, int outcome) {
  return (branch_contraction(psi.labels(), qubit, basis, outcome) * psi.amplitudes()).squaredNorm();
}

double outcome_probability(const DensityOperator& rho, Label qubit, Basis basis, int outcome) {
  const Matrix c = branch_contraction(rho.labels(), qubit, basis, outcome);
  return (c * rho.matrix() * c.adjoint()).trace().real();
}

Measurement<PureState> projective_measure(const PureState& psi, Label qubit, Basis basis, int forced_outcome) {
  const Vector branch = branch_contraction(psi.labels(), qubit, basis, forced_outcome) * psi.amplitudes();
  const double p = branch.squaredNorm();
  if (p < 1e-12) throw std::domain_error("forced measurement branch has zero probability");
  return {forced_outcome, p, PureState(without(psi.labels(), qubit), branch / std::sqrt(p))};
}

Measurement<DensityOperator> projective_measure(const DensityOperator& rho, Label qubit, Basis basis,
                                                int forced_outcome) {
  const Matrix c = branch_contraction(rho.labels(), qubit, basis, forced_outcome);
  Matrix branch = c * rho.matrix() * c.adjoint();
  const double p = branch.trace().real();
  if (p < 1e-12) throw std::domain_error("forced measurement branch has zero probability");
  branch = (0.5 / p) * (branch + branch.adjoint()).eval();
  return {forced_outcome, p, DensityOperator(without(rho.labels(), qubit), std::move(branch))};
}

namespace {
int draw_outcome(double p0, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return u(rng) < p0 ? 0 : 1;
}
}  // namespace

Measurement<PureState> projective_measure(const PureState& psi, Label qubit, Basis basis, std::mt19937_64& rng) {
  return projective_measure(psi, qubit, basis, draw_outcome(outcome_probability(psi, qubit, basis, 0), rng));
}

Measurement<DensityOperator> projective_measure(const DensityOperator& rho, Label qubit, Basis basis,
                                                std::mt19937_64& rng) {
  return projective_measure(rho, qubit, basis, draw_outcome(outcome_probability(rho, qubit, basis, 0), rng));
}

double overlap(const PureState& a, const PureState& b) {
  const PureState aligned = b.reordered(a.labels());
  return std::abs(a.amplitudes().dot(aligned.amplitudes()));
}

bool equal_up_to_phase(const PureState& a, const PureState& b, double tol) {
  std::vector<Label> la = a.labels(), lb = b.labels();
  std::sort(la.begin(), la.end());
  std::sort(lb.begin(), lb.end());
  if (la != lb) return false;
  return overlap(a, b) >= 1.0 - tol;
}

}  // namespace graphcode
