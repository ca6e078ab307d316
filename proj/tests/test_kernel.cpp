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
#include "graphcode/graph.hpp"
#include "graphcode/kernel.hpp"
#include "check.hpp"
#include "oracle.hpp"

namespace graphcode {
namespace {

TEST_SUITE_BEGIN("kernel");

using oracle::kR2;

PureState single(Label q, const Vector& v) { return PureState({q}, v); }

TEST_CASE("TensorProduct.ZeroTimesPlus") {
  const PureState s = tensor_product(single(1, oracle::zero()), single(2, oracle::plus()));
  CHECK(s.amplitudes().isApprox(oracle::ket({kR2, kR2, 0, 0}), 1e-12));
  CHECK(s.labels() == std::vector<Label>{1, 2});
}

TEST_CASE("TensorProduct.PlusPlusIsUniform") {
  const PureState s = tensor_product(single(1, oracle::plus()), single(2, oracle::plus()));
  CHECK(s.amplitudes().isApprox(oracle::ket({0.5, 0.5, 0.5, 0.5}), 1e-12));
}

TEST_CASE("TensorProduct.LabelCollisionThrows") {
  CHECK_THROWS_AS(tensor_product(single(1, oracle::plus()), single(1, oracle::plus())), std::invalid_argument);
}

TEST_CASE("TensorProduct.BellPairsReassembleZeroL") {
  // |phi->_15 |phi->_42 - |psi->_15 |psi->_42, written in order (1,5,4,2).
  const Vector raw = oracle::kR2 * (oracle::kron(oracle::phi_minus(), oracle::phi_minus()) -
                                    oracle::kron(oracle::psi_minus(), oracle::psi_minus()));
  const PureState a = tensor_product(PureState({1, 5}, oracle::phi_minus()), PureState({4, 2}, oracle::phi_minus()));
  const PureState b = tensor_product(PureState({1, 5}, oracle::psi_minus()), PureState({4, 2}, oracle::psi_minus()));
  const PureState sum({1, 5, 4, 2}, kR2 * (a.amplitudes() - b.amplitudes()));
  CHECK(sum.amplitudes().isApprox(raw, 1e-12));
  const PureState reordered = sum.reordered(std::vector<Label>{1, 2, 4, 5});
  CHECK_NEAR(overlap(reordered, logical_state("0_L")), 1.0, 1e-9);
}

TEST_CASE("ApplyUnitary.ControlledZOnPlusPlus") {
  const PureState pp = tensor_product(single(1, oracle::plus()), single(2, oracle::plus()));
  const PureState out = apply_unitary(pp, gates::controlled_z(), std::vector<Label>{1, 2});
  const Vector expected = kR2 * (oracle::kron(oracle::zero(), oracle::plus()) + oracle::kron(oracle::one(), oracle::minus()));
  CHECK(out.amplitudes().isApprox(expected, 1e-12));
}

TEST_CASE("ApplyUnitary.HadamardOnZero") {
  const PureState out = apply_unitary(single(1, oracle::zero()), gates::hadamard(), std::vector<Label>{1});
  CHECK(out.amplitudes().isApprox(oracle::plus(), 1e-12));
}

TEST_CASE("ApplyUnitary.TwoAGatesActAsMinusIZ") {
  std::mt19937_64 rng(7);
  const PureState psi({1, 2, 3}, oracle::random_state(rng, 3));
  const std::vector<Label> t{3};
  const PureState twice = apply_unitary(apply_unitary(psi, gates::sqrt_minus_iz(), t), gates::sqrt_minus_iz(), t);
  const Matrix minus_iz = oracle::cplx(0, -1) * oracle::pauli('Z');
  CHECK(equal_up_to_phase(twice, apply_unitary(psi, minus_iz, t)));
  CHECK((gates::sqrt_minus_iz() * gates::sqrt_minus_iz()).isApprox(minus_iz, 1e-12));
  CHECK((gates::sqrt_minus_ix() * gates::sqrt_minus_ix()).isApprox(oracle::cplx(0, -1) * oracle::pauli('X'), 1e-12));
}

TEST_CASE("ApplyUnitary.NonUnitaryThrows") {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = 1.0;
  CHECK_THROWS_AS(apply_unitary(single(1, oracle::plus()), m, std::vector<Label>{1}), std::invalid_argument);
}

TEST_CASE("ApplyUnitary.PreservesNormAndTrace") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const PureState psi({1, 2, 3, 4}, oracle::random_state(rng, 4));
    const Matrix u = Eigen::HouseholderQR<Matrix>(Matrix::Random(4, 4)).householderQ();
    const PureState out = apply_unitary(psi, u, std::vector<Label>{4, 2});
    CHECK_NEAR(out.amplitudes().norm(), 1.0, 1e-10);
    const DensityOperator rho = apply_unitary(DensityOperator(psi), u, std::vector<Label>{4, 2});
    CHECK_NEAR(rho.matrix().trace().real(), 1.0, 1e-10);
    CHECK_NEAR((out.amplitudes().adjoint() * rho.matrix() * out.amplitudes())(0).real(), 1.0, 1e-10);
  }
}

TEST_CASE("PartialTrace.BellPairGivesMaximallyMixed") {
  const DensityOperator rho(PureState({1, 2}, oracle::phi_plus()));
  const DensityOperator r = partial_trace(rho, std::vector<Label>{1});
  CHECK(r.matrix().isApprox(Matrix::Identity(2, 2) / 2.0, 1e-12));
}

TEST_CASE("PartialTrace.PlusLogicalMinusQubitFourHasPurityHalf") {
  const DensityOperator r = partial_trace(DensityOperator(logical_state("+_L")), std::vector<Label>{2, 5, 1});
  CHECK_NEAR(r.purity(), 0.5, 1e-10);
}

TEST_CASE("PartialTrace.KeepAllIsIdentity") {
  std::mt19937_64 rng(3);
  const DensityOperator rho(PureState({1, 2, 3}, oracle::random_state(rng, 3)));
  CHECK(partial_trace(rho, std::vector<Label>{1, 2, 3}).matrix().isApprox(rho.matrix(), 1e-12));
}

TEST_CASE("PartialTrace.EmptyKeepThrows") {
  const DensityOperator rho(PureState({1}, oracle::plus()));
  CHECK_THROWS_AS(partial_trace(rho, std::vector<Label>{}), std::invalid_argument);
}

TEST_CASE("PartialTrace.Composes") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const DensityOperator rho(PureState({1, 2, 3, 4, 5}, oracle::random_state(rng, 5)));
    const auto direct = partial_trace(rho, std::vector<Label>{4, 1});
    const auto staged = partial_trace(partial_trace(rho, std::vector<Label>{1, 3, 4}), std::vector<Label>{4, 1});
    CHECK(direct.matrix().isApprox(staged.matrix(), 1e-10));
  }
}

TEST_CASE("PartialTrace.MatchesHandSum") {
  std::mt19937_64 rng(9);
  const Vector v = oracle::random_state(rng, 3);
  const Matrix full = v * v.adjoint();
  // Keep qubit 2 (the middle factor) by summing over qubits 1 and 3.
  Matrix expected = Matrix::Zero(2, 2);
  for (int a = 0; a < 2; ++a) {
    for (int c = 0; c < 2; ++c) {
      for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) expected(i, j) += full(a * 4 + i * 2 + c, a * 4 + j * 2 + c);
      }
    }
  }
  const auto r = partial_trace(DensityOperator({1, 2, 3}, full), std::vector<Label>{2});
  CHECK(r.matrix().isApprox(expected, 1e-12));
}

TEST_CASE("Expectation.ZOnZero") {
  CHECK_NEAR(expectation(single(1, oracle::zero()), Observable({1}, oracle::pauli('Z'))), 1.0, 1e-12);
}

TEST_CASE("Expectation.SyndromeOneOnPlusLogical") {
  // S1 = Y1 Z2 Z4 Y5 as a dense matrix in order (1,2,4,5).
  const Observable s1({1, 2, 4, 5}, oracle::word("YZZY"));
  CHECK_NEAR(expectation(logical_state("+_L"), s1), 1.0, 1e-10);
}

TEST_CASE("Expectation.TracelessOnMaximallyMixed") {
  const auto rho = DensityOperator::maximally_mixed({1, 2, 3, 4, 5});
  CHECK_NEAR(expectation(rho, Observable({1, 2, 3, 4, 5}, oracle::word("XXXXX"))), 0.0, 1e-12);
}

TEST_CASE("Measure.PlusInZIsFair") {
  const PureState p = single(1, oracle::plus());
  CHECK_NEAR(outcome_probability(p, 1, Basis::Z, 0), 0.5, 1e-12);
  CHECK_NEAR(outcome_probability(p, 1, Basis::Z, 1), 0.5, 1e-12);
}

TEST_CASE("Measure.ResourceQubitThreeInZLeavesPlusLogical") {
  const auto m = projective_measure(build_resource(), kAncilla, Basis::Z, 0);
  CHECK_NEAR(m.probability, 0.5, 1e-10);
  CHECK(m.post_state.num_qubits() == 4);
  CHECK_NEAR(overlap(m.post_state, logical_state("+_L")), 1.0, 1e-9);
}

TEST_CASE("Measure.ResourceQubitThreeInXLeavesZeroLogical") {
  const auto m = projective_measure(build_resource(), kAncilla, Basis::X, 0);
  CHECK_NEAR(overlap(m.post_state, logical_state("0_L")), 1.0, 1e-9);
}

TEST_CASE("Measure.ForcingImpossibleBranchThrows") {
  CHECK_THROWS_AS(projective_measure(single(1, oracle::zero()), 1, Basis::Z, 1), std::domain_error);
}

TEST_CASE("Measure.BranchProbabilitiesSumToOne") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    const PureState psi({1, 2, 3}, oracle::random_state(rng, 3));
    for (Basis b : {Basis::X, Basis::Y, Basis::Z}) {
      for (Label q : {1, 2, 3}) {
        CHECK_NEAR(outcome_probability(psi, q, b, 0) + outcome_probability(psi, q, b, 1), 1.0, 1e-10);
      }
    }
  }
}

TEST_CASE("Measure.OutcomeZeroIsPlusOneEigenvalue") {
  const auto m = projective_measure(single(1, oracle::minus()), 1, Basis::X, 1);
  CHECK_NEAR(m.probability, 1.0, 1e-12);
}

TEST_CASE("Overlap.PhaseInsensitiveEquality") {
  const PureState a = single(1, oracle::plus());
  const PureState b = single(1, oracle::cplx(0, 1) * oracle::plus());
  CHECK(equal_up_to_phase(a, b));
  CHECK_FALSE(equal_up_to_phase(a, single(1, oracle::minus())));
}

TEST_CASE("DensityOperator.RejectsNonHermitian") {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = 1.0;
  m(0, 1) = 0.3;
  CHECK_THROWS_AS(DensityOperator({1}, m), std::invalid_argument);
}

TEST_SUITE_END();

}  // namespace
}  // namespace graphcode
