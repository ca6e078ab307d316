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

#include <vector>

#include "check.hpp"
#include "graphcode/code412.hpp"
#include "graphcode/noise.hpp"
#include "graphcode/tomography.hpp"
#include "oracle.hpp"

namespace graphcode {
namespace {

TEST_SUITE_BEGIN("tomography");

using namespace oracle;

Matrix proj(const Vec& v) { return v * v.adjoint(); }

// Applies a channel given by Kraus operators.
Matrix kraus_apply(const std::vector<Matrix>& ks, const Matrix& rho) {
  Matrix out = Matrix::Zero(2, 2);
  for (const auto& k : ks) out += k * rho * k.adjoint();
  return out;
}

std::vector<Matrix> random_kraus(std::mt19937_64& rng) {
  // Two blocks of a random isometry C^2 -> C^4.
  std::normal_distribution<double> g;
  Matrix m(4, 2);
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 2; ++c) m(r, c) = cplx(g(rng), g(rng));
  }
  const Matrix q = Eigen::HouseholderQR<Matrix>(m).householderQ() * Matrix::Identity(4, 2);
  return {q.topRows(2), q.bottomRows(2)};
}

ChannelSample sample_of(const std::function<Matrix(const Matrix&)>& channel) {
  return sample_channel([&](const AncillaState& a) { return channel(proj(a.state(1).amplitudes())); });
}

ChiMatrix encoding_chi_ideal() {
  return reconstruct_chi(sample_channel([](const AncillaState& a) { return logical_tomography(encode(a, 0).corrected).rho; }));
}

TEST_CASE("LogicalTomography.Examples") {
  CHECK((logical_tomography(logical_state("+_L")).rho - proj(plus())).norm() < 1e-10);
  CHECK((logical_tomography(logical_state("0_L")).rho - proj(zero())).norm() < 1e-10);
  CHECK((logical_tomography(logical_state("-y_L")).rho - proj(minus_y())).norm() < 1e-10);
  const auto mixed = logical_tomography(DensityOperator::maximally_mixed({1, 2, 4, 5}));
  CHECK((mixed.rho - Matrix::Identity(2, 2) / 2.0).norm() < 1e-12);
  CHECK_FALSE(mixed.flagged);
}

TEST_CASE("LogicalTomography.FlagsUnphysicalExpectations") {
  const auto ok = logical_from_expectations({0.6, 0.0, 0.8});
  CHECK_FALSE(ok.flagged);
  CHECK_NEAR(ok.min_eigenvalue, 0.0, 1e-12);
  const auto bad = logical_from_expectations({0.9, 0.0, 0.9});
  CHECK(bad.flagged);
  CHECK(bad.min_eigenvalue < kUnphysicalEigenvalue);
  const auto slight = logical_from_expectations({0.62, 0.0, 0.8});
  CHECK(slight.min_eigenvalue < 0.0);
  CHECK_FALSE(slight.flagged);
}

TEST_CASE("LogicalTomography.EncodingActsAsHadamardOnBloch") {
  for (Probe p : kProbes) {
    const auto a = AncillaState::from_probe(p);
    const auto b = a.bloch();
    const auto e = logical_tomography(encode(a, 0).corrected).expectations;
    CHECK_NEAR(e[0], b[2], 1e-10);
    CHECK_NEAR(e[1], -b[1], 1e-10);
    CHECK_NEAR(e[2], b[0], 1e-10);
  }
}

TEST_CASE("StateFidelity.Examples") {
  const PureState psi({1}, plus_y());
  CHECK_NEAR(state_fidelity(DensityOperator(psi), psi), 1.0, 1e-12);
  CHECK_NEAR(state_fidelity(DensityOperator::maximally_mixed({1}), psi), 0.5, 1e-12);
  const PureState ideal = logical_state("+_L");
  for (double v : {0.0, 0.3, 0.78, 1.0}) {
    const DensityOperator noisy = apply_noise(DensityOperator(ideal), NoiseModel::white(v));
    CHECK_NEAR(state_fidelity(noisy, ideal), v + (1.0 - v) / 16.0, 1e-12);
  }
}

TEST_CASE("Chi.IdentityChannel") {
  const ChiMatrix chi = reconstruct_chi(sample_of([](const Matrix& r) { return r; }));
  Matrix expected = Matrix::Zero(4, 4);
  expected(0, 0) = 1.0;
  CHECK((chi.matrix() - expected).norm() < 1e-12);
  CHECK((ChiMatrix::identity().matrix() - expected).norm() < 1e-12);
}

TEST_CASE("Chi.EncodingIsHadamard") {
  const ChiMatrix chi = encoding_chi_ideal();
  Matrix expected = Matrix::Zero(4, 4);
  for (int i : {1, 3}) {
    for (int j : {1, 3}) expected(i, j) = 0.5;
  }
  CHECK((chi.matrix() - expected).norm() < 1e-8);
  CHECK((ChiMatrix::hadamard().matrix() - expected).norm() < 1e-12);
  CHECK_NEAR(process_fidelity(chi, ChiMatrix::hadamard()), 1.0, 1e-8);
}

TEST_CASE("Chi.EncodeThenDecodeIsIdentity") {
  const ChiMatrix chi = reconstruct_chi(sample_channel([](const AncillaState& a) {
    return decode_no_loss(encode(a, 0).corrected).matrix();
  }));
  CHECK_NEAR(process_fidelity(chi, ChiMatrix::identity()), 1.0, 1e-8);
}

TEST_CASE("Chi.Depolarizing") {
  for (double p : {0.0, 0.2, 0.5, 1.0}) {
    const ChiMatrix chi = reconstruct_chi(sample_of([p](const Matrix& r) {
      return Matrix((1.0 - p) * r + p * r.trace() * Matrix::Identity(2, 2) / 2.0);
    }));
    CHECK_NEAR(chi(0, 0).real(), 1.0 - 3.0 * p / 4.0, 1e-12);
    for (int i = 1; i < 4; ++i) CHECK_NEAR(chi(i, i).real(), p / 4.0, 1e-12);
    CHECK((chi.matrix() - ChiMatrix::depolarizing(p).matrix()).norm() < 1e-12);
    CHECK_NEAR(process_fidelity(chi, ChiMatrix::identity()), 1.0 - 3.0 * p / 4.0, 1e-12);
  }
}

TEST_CASE("Chi.RandomKrausChannelsAreRebuiltExactly") {
  std::mt19937_64 rng(43);
  for (int t = 0; t < 20; ++t) {
    const auto ks = random_kraus(rng);
    const ChiMatrix chi = reconstruct_chi(sample_of([&](const Matrix& r) { return kraus_apply(ks, r); }));
    CHECK(chi.is_physical(1e-8));
    CHECK(chi.trace_preservation_error() < 1e-9);
    CHECK((chi.matrix() - ChiMatrix::from_kraus(ks).matrix()).norm() < 1e-9);
    for (int k = 0; k < 20; ++k) {
      const Matrix rho = proj(random_state(rng, 1));
      CHECK((chi.apply(rho) - kraus_apply(ks, rho)).norm() < 1e-8);
    }
  }
}

TEST_CASE("Chi.MissingProbeThrows") {
  ChannelSample s = sample_of([](const Matrix& r) { return r; });
  s.outputs.erase(Probe::plus_y);
  CHECK_THROWS_AS(reconstruct_chi(s), std::invalid_argument);
}

TEST_CASE("ProcessFidelity.Examples") {
  CHECK_NEAR(process_fidelity(ChiMatrix::hadamard(), ChiMatrix::hadamard()), 1.0, 1e-12);
  CHECK_NEAR(process_fidelity(ChiMatrix::hadamard(), ChiMatrix::identity()), 0.0, 1e-12);
  CHECK_THROWS_AS(process_fidelity(ChiMatrix(Matrix::Zero(4, 4)), ChiMatrix::identity()), std::domain_error);
}

TEST_CASE("ProcessFidelity.SymmetricAndOneOnlyForEqualPureChannels") {
  std::mt19937_64 rng(47);
  for (int t = 0; t < 20; ++t) {
    const Matrix u1 = Eigen::HouseholderQR<Matrix>(Matrix::Random(2, 2)).householderQ();
    const Matrix u2 = Eigen::HouseholderQR<Matrix>(Matrix::Random(2, 2)).householderQ();
    const ChiMatrix a = ChiMatrix::from_unitary(u1), b = ChiMatrix::from_unitary(u2);
    CHECK_NEAR(process_fidelity(a, b), process_fidelity(b, a), 1e-12);
    CHECK_NEAR(process_fidelity(a, a), 1.0, 1e-12);
    const double overlap = std::norm((u1.adjoint() * u2).trace()) / 4.0;
    CHECK_NEAR(process_fidelity(a, b), overlap, 1e-10);
  }
}

TEST_CASE("AverageFidelity.ProbeMeans") {
  const std::vector<double> lost4{0.80, 0.77, 0.75, 0.92};
  const std::vector<double> lost1{0.80, 0.77, 0.78, 0.88};
  const std::vector<double> ones{1, 1, 1, 1};
  CHECK_NEAR(average_probe_fidelity(lost4), 0.81, 1e-12);
  CHECK_NEAR(average_probe_fidelity(lost1), 0.8075, 1e-12);
  CHECK_NEAR(average_probe_fidelity(ones), 1.0, 1e-12);
  CHECK_NEAR(sphere_average_fidelity(1.0), 1.0, 1e-12);
  CHECK_NEAR(sphere_average_fidelity(0.25), 0.5, 1e-12);
}

TEST_CASE("BlochImage.Examples") {
  const auto pts = reference_sphere_points();
  REQUIRE_FALSE(pts.empty());
  const auto id = bloch_image(ChiMatrix::identity(), pts);
  const auto had = bloch_image(ChiMatrix::hadamard(), pts);
  const double v = 0.6;
  const auto shrunk = bloch_image(ChiMatrix::depolarizing(1.0 - v), pts);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (int k = 0; k < 3; ++k) {
      CHECK_NEAR(id.points[i][k], pts[i][k], 1e-12);
      CHECK_NEAR(shrunk.points[i][k], v * pts[i][k], 1e-12);
    }
    CHECK_NEAR(had.points[i][0], pts[i][2], 1e-12);
    CHECK_NEAR(had.points[i][1], -pts[i][1], 1e-12);
    CHECK_NEAR(had.points[i][2], pts[i][0], 1e-12);
  }
  CHECK_FALSE(id.expands);
  CHECK_FALSE(had.expands);
}

TEST_CASE("BlochImage.UnphysicalMapIsFlagged") {
  Matrix m = Matrix::Zero(4, 4);
  m(0, 0) = 1.5;
  m(3, 3) = -0.5;
  const std::vector<Bloch> pts{{0, 0, 1}, {1, 0, 0}};
  CHECK(bloch_image(ChiMatrix(m), pts).expands);
}

TEST_CASE("BlochImage.EncodingFlipsYAndSwapsXZ") {
  const std::vector<Bloch> pts{{0, 1, 0}, {0, -1, 0}, {1, 0, 0}, {0, 0, 1}};
  const auto img = bloch_image(encoding_chi_ideal(), pts);
  CHECK_NEAR(img.points[0][1], -1.0, 1e-9);
  CHECK_NEAR(img.points[1][1], 1.0, 1e-9);
  CHECK_NEAR(img.points[2][2], 1.0, 1e-9);
  CHECK_NEAR(img.points[3][0], 1.0, 1e-9);
}

TEST_SUITE_END();

}  // namespace
}  // namespace graphcode
