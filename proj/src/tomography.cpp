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

#include "graphcode/tomography.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace graphcode {

namespace {

const std::array<Matrix, 4>& pauli_basis() {
  static const std::array<Matrix, 4> basis{gates::identity(), gates::pauli_x(), gates::pauli_y(), gates::pauli_z()};
  return basis;
}

// |M>> = sum_j |j> (x) M|j>, matching the Choi layout below.
Vector vectorize(const Matrix& m) {
  Vector v(4);
  for (int j = 0; j < 2; ++j) {
    for (int i = 0; i < 2; ++i) v(2 * j + i) = m(i, j);
  }
  return v;
}

double min_eig_hermitian(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es((m + m.adjoint()) / 2.0);
  return es.eigenvalues().minCoeff();
}

}  // namespace

LogicalDensityMatrix logical_from_expectations(const Bloch& e) {
  LogicalDensityMatrix out{density_from_bloch(e), e, 0.0, false};
  out.min_eigenvalue = min_eig_hermitian(out.rho);
  out.flagged = out.min_eigenvalue < kUnphysicalEigenvalue;
  return out;
}

LogicalDensityMatrix logical_tomography(const DensityOperator& rho) {
  const auto lo = logical_ops();
  return logical_from_expectations({expectation(rho, lo.xbar), expectation(rho, lo.ybar), expectation(rho, lo.zbar)});
}

LogicalDensityMatrix logical_tomography(const PureState& psi) { return logical_tomography(DensityOperator(psi)); }

double state_fidelity(const DensityOperator& rho, const PureState& target) {
  if (rho.num_qubits() != target.num_qubits()) throw std::invalid_argument("state_fidelity: dimension mismatch");
  return state_fidelity(rho.matrix(), target.reordered(rho.labels()).amplitudes());
}

double state_fidelity(const Matrix& rho, const Vector& target) {
  if (rho.rows() != target.size()) throw std::invalid_argument("state_fidelity: dimension mismatch");
  return std::clamp((target.adjoint() * rho * target)(0, 0).real(), 0.0, 1.0);
}

Matrix density_from_bloch(const Bloch& r) {
  return (gates::identity() + r[0] * gates::pauli_x() + r[1] * gates::pauli_y() + r[2] * gates::pauli_z()) / 2.0;
}

Bloch bloch_vector(const Matrix& rho) {
  return {(rho * gates::pauli_x()).trace().real(), (rho * gates::pauli_y()).trace().real(),
          (rho * gates::pauli_z()).trace().real()};
}

ChiMatrix::ChiMatrix(Matrix m) : m_(std::move(m)) {
  if (m_.rows() != 4 || m_.cols() != 4) throw std::invalid_argument("chi matrix must be 4x4");
}

ChiMatrix ChiMatrix::identity() { return from_unitary(gates::identity()); }

ChiMatrix ChiMatrix::hadamard() { return from_unitary(gates::hadamard()); }

ChiMatrix ChiMatrix::from_unitary(const Matrix& u) {
  const std::array<Matrix, 1> k{u};
  return from_kraus(k);
}

ChiMatrix ChiMatrix::from_kraus(std::span<const Matrix> kraus) {
  Matrix chi = Matrix::Zero(4, 4);
  for (const Matrix& k : kraus) {
    Vector a(4);
    for (int m = 0; m < 4; ++m) a(m) = (pauli_basis()[m].adjoint() * k).trace() / 2.0;
    chi += a * a.adjoint();
  }
  return ChiMatrix(chi);
}

ChiMatrix ChiMatrix::depolarizing(double p) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("depolarizing probability must lie in [0, 1]");
  Matrix chi = Matrix::Zero(4, 4);
  chi(0, 0) = 1.0 - 3.0 * p / 4.0;
  for (int m = 1; m < 4; ++m) chi(m, m) = p / 4.0;
  return ChiMatrix(chi);
}

Matrix ChiMatrix::apply(const Matrix& rho) const {
  Matrix out = Matrix::Zero(2, 2);
  for (int m = 0; m < 4; ++m) {
    for (int n = 0; n < 4; ++n) out += m_(m, n) * pauli_basis()[m] * rho * pauli_basis()[n].adjoint();
  }
  return out;
}

double ChiMatrix::trace_preservation_error() const {
  Matrix sum = Matrix::Zero(2, 2);
  for (int m = 0; m < 4; ++m) {
    for (int n = 0; n < 4; ++n) sum += m_(m, n) * pauli_basis()[n].adjoint() * pauli_basis()[m];
  }
  return (sum - gates::identity()).norm();
}

double ChiMatrix::min_eigenvalue() const { return min_eig_hermitian(m_); }

bool ChiMatrix::is_physical(double tol) const {
  return is_hermitian(m_, tol) && min_eigenvalue() >= -tol && trace_preservation_error() <= tol;
}

ChannelSample sample_channel(const std::function<Matrix(const AncillaState&)>& channel) {
  ChannelSample s;
  for (Probe p : kProbes) s.outputs[p] = channel(AncillaState::from_probe(p));
  return s;
}

ChiMatrix reconstruct_chi(const ChannelSample& sample) {
  for (Probe p : kProbes) {
    if (!sample.outputs.contains(p)) throw std::invalid_argument("channel sample lacks probe " + probe_name(p));
  }
  const cplx i{0.0, 1.0};
  const Matrix& e0 = sample.outputs.at(Probe::zero);
  const Matrix& e1 = sample.outputs.at(Probe::one);
  const Matrix& ep = sample.outputs.at(Probe::plus);
  const Matrix& ey = sample.outputs.at(Probe::plus_y);
  // |0><1| = |+><+| + i|+y><+y| - (1+i)/2 (|0><0| + |1><1|).
  const Matrix e01 = ep + i * ey - (1.0 + i) / 2.0 * (e0 + e1);
  const Matrix e10 = e01.adjoint();
  const std::array<std::array<const Matrix*, 2>, 2> blocks{{{&e0, &e01}, {&e10, &e1}}};
  Matrix choi = Matrix::Zero(4, 4);
  for (int j = 0; j < 2; ++j) {
    for (int k = 0; k < 2; ++k) choi.block(2 * j, 2 * k, 2, 2) = *blocks[j][k];
  }
  Matrix chi(4, 4);
  for (int m = 0; m < 4; ++m) {
    const Vector vm = vectorize(pauli_basis()[m]);
    for (int n = 0; n < 4; ++n) chi(m, n) = (vm.adjoint() * choi * vectorize(pauli_basis()[n]))(0, 0) / 4.0;
  }
  return ChiMatrix(chi);
}

double process_fidelity(const ChiMatrix& a, const ChiMatrix& b) {
  const double ta = a.trace(), tb = b.trace();
  if (std::abs(ta) < 1e-12 || std::abs(tb) < 1e-12) throw std::domain_error("process_fidelity: chi matrix has zero trace");
  return (a.matrix() * b.matrix()).trace().real() / (ta * tb);
}

double average_probe_fidelity(std::span<const double> fidelities) {
  if (fidelities.empty()) throw std::invalid_argument("average_probe_fidelity: no fidelities");
  return std::accumulate(fidelities.begin(), fidelities.end(), 0.0) / static_cast<double>(fidelities.size());
}

double sphere_average_fidelity(double process_fidelity) { return (2.0 * process_fidelity + 1.0) / 3.0; }

BlochImage bloch_image(const ChiMatrix& chi, std::span<const Bloch> points) {
  BlochImage out{{}, false};
  for (const Bloch& p : points) {
    if (std::hypot(p[0], p[1], p[2]) > 1.0 + 1e-9) throw std::invalid_argument("bloch_image: point outside the unit ball");
    const Bloch q = bloch_vector(chi.apply(density_from_bloch(p)));
    if (std::hypot(q[0], q[1], q[2]) > 1.0 + 1e-9) out.expands = true;
    out.points.push_back(q);
  }
  return out;
}

std::vector<Bloch> reference_sphere_points() {
  std::vector<Bloch> out{{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
  const double c = 1.0 / std::sqrt(3.0);
  for (int sx : {1, -1}) {
    for (int sy : {1, -1}) {
      for (int sz : {1, -1}) out.push_back({sx * c, sy * c, sz * c});
    }
  }
  return out;
}

}  // namespace graphcode
