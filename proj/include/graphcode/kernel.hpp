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

#ifndef GRAPHCODE_KERNEL_HPP
#define GRAPHCODE_KERNEL_HPP

#include <complex>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace graphcode {

using cplx = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

/// Qubit identifiers follow the five-qubit numbering of the code resource
/// (1, 2, 4, 5 carry the code, 3 is the ancilla).
using Label = int;

enum class QubitRole { polarization, path, ancilla, unspecified };

/// Photonic carrier of each qubit in the reference experiment. Metadata only.
QubitRole role_of(Label q);
std::string role_name(QubitRole role);

enum class Basis { X, Y, Z };

char basis_char(Basis b);
Basis parse_basis(char c);

constexpr int kMaxQubits = 6;
constexpr double kNormTolerance = 1e-10;
constexpr double kPhaseEquivalenceTolerance = 1e-9;

/// Dense pure state. Qubit labels()[0] is the most significant tensor factor.
class PureState {
 public:
  PureState(std::vector<Label> labels, Vector amplitudes);

  /// Computational basis state, bits listed in label order.
  static PureState basis_state(std::vector<Label> labels, std::span<const int> bits);
  /// Single-qubit eigenstate of a Pauli basis; outcome 0 is the +1 eigenvector.
  static PureState eigenstate(Label label, Basis basis, int outcome);

  const std::vector<Label>& labels() const { return labels_; }
  int num_qubits() const { return static_cast<int>(labels_.size()); }
  const Vector& amplitudes() const { return amplitudes_; }
  cplx amplitude(std::uint64_t index) const { return amplitudes_(static_cast<Eigen::Index>(index)); }

  /// Same state with the tensor factors permuted into `order`.
  PureState reordered(std::span<const Label> order) const;

 private:
  std::vector<Label> labels_;
  Vector amplitudes_;
};

class DensityOperator {
 public:
  DensityOperator(std::vector<Label> labels, Matrix matrix);
  explicit DensityOperator(const PureState& psi);

  static DensityOperator maximally_mixed(std::vector<Label> labels);

  const std::vector<Label>& labels() const { return labels_; }
  int num_qubits() const { return static_cast<int>(labels_.size()); }
  const Matrix& matrix() const { return matrix_; }

  DensityOperator reordered(std::span<const Label> order) const;
  double purity() const;
  double min_eigenvalue() const;

 private:
  std::vector<Label> labels_;
  Matrix matrix_;
};

/// Hermitian operator acting on a declared subset of qubits.
class Observable {
 public:
  Observable(std::vector<Label> targets, Matrix matrix);

  const std::vector<Label>& targets() const { return targets_; }
  const Matrix& matrix() const { return matrix_; }
  double max_abs_eigenvalue() const;

 private:
  std::vector<Label> targets_;
  Matrix matrix_;
};

namespace gates {
Matrix identity();
Matrix pauli_x();
Matrix pauli_y();
Matrix pauli_z();
Matrix pauli(Basis b);
Matrix hadamard();
/// diag(1, i)
Matrix phase_s();
/// Square root of -iZ on the branch e^{-i pi/4} diag(1, -i). Equal to sqrt(iZ)
/// up to a global phase, which is the neighbour rotation of a local
/// complementation.
Matrix sqrt_minus_iz();
/// Principal square root of -iX, exp(-i pi/4 X).
Matrix sqrt_minus_ix();
Matrix controlled_z();
}  // namespace gates

bool is_unitary(const Matrix& u, double tol = kNormTolerance);
bool is_hermitian(const Matrix& m, double tol = kNormTolerance);

/// Lift an operator on `targets` to the full register, identity elsewhere.
Matrix embed(const Matrix& op, std::span<const Label> targets, std::span<const Label> labels);

PureState tensor_product(const PureState& a, const PureState& b);
DensityOperator tensor_product(const DensityOperator& a, const DensityOperator& b);

PureState apply_unitary(const PureState& state, const Matrix& u, std::span<const Label> targets);
DensityOperator apply_unitary(const DensityOperator& rho, const Matrix& u, std::span<const Label> targets);

/// K rho K^dagger without normalisation checks on K; the result is rescaled to
/// unit trace. Used for filters and Kraus branches.
DensityOperator apply_filter(const DensityOperator& rho, const Matrix& k, std::span<const Label> targets);
PureState apply_filter(const PureState& psi, const Matrix& k, std::span<const Label> targets);

DensityOperator partial_trace(const DensityOperator& rho, std::span<const Label> keep);

double expectation(const DensityOperator& rho, const Observable& obs);
double expectation(const PureState& psi, const Observable& obs);

template <typename State>
struct Measurement {
  int outcome;
  double probability;
  State post_state;
};

/// Probability that measuring `qubit` in `basis` yields `outcome` (0 <-> +1).
double outcome_probability(const PureState& psi, Label qubit, Basis basis, int outcome);
double outcome_probability(const DensityOperator& rho, Label qubit, Basis basis, int outcome);

/// Forced branch. Throws std::domain_error if its probability is below 1e-12.
/// The measured qubit is removed from the register.
Measurement<PureState> projective_measure(const PureState& psi, Label qubit, Basis basis, int forced_outcome);
Measurement<DensityOperator> projective_measure(const DensityOperator& rho, Label qubit, Basis basis,
                                                int forced_outcome);
Measurement<PureState> projective_measure(const PureState& psi, Label qubit, Basis basis, std::mt19937_64& rng);
Measurement<DensityOperator> projective_measure(const DensityOperator& rho, Label qubit, Basis basis,
                                                std::mt19937_64& rng);

/// |<a|b>| after aligning b's labels to a's.
double overlap(const PureState& a, const PureState& b);
bool equal_up_to_phase(const PureState& a, const PureState& b, double tol = kPhaseEquivalenceTolerance);

}  // namespace graphcode

#endif  // GRAPHCODE_KERNEL_HPP
