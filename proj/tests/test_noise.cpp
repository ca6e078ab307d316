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

#include <sstream>
#include <vector>

#include "check.hpp"
#include "graphcode/code412.hpp"
#include "graphcode/graph.hpp"
#include "graphcode/noise.hpp"
#include "graphcode/witness.hpp"
#include "oracle.hpp"

namespace graphcode {
namespace {

TEST_SUITE_BEGIN("noise");

using namespace oracle;

CountRecord manual(std::vector<Label> qubits, std::string setting, std::map<std::string, std::uint64_t> h) {
  return {std::move(qubits), std::move(setting), std::move(h), 0.0};
}

double witness_sampled(const DensityOperator& rho, const WitnessSpec& w, double n, std::uint64_t seed) {
  return estimate_witness(sample_witness_counts(rho, w, n, {seed, 0}), w);
}

TEST_CASE("ApplyNoise.Examples") {
  const DensityOperator rho(logical_state("+_L"));
  CHECK((apply_noise(rho, NoiseModel{}).matrix() - rho.matrix()).norm() < 1e-15);
  CHECK((apply_noise(rho, NoiseModel::white(0.0)).matrix() - Matrix::Identity(16, 16) / 16.0).norm() < 1e-12);
  for (double p : {0.0, 0.1, 0.5, 1.0}) {
    NoiseModel m;
    m.depolarizing[1] = p;
    const DensityOperator out = apply_noise(DensityOperator(PureState({1}, zero())), m);
    CHECK_NEAR(expectation(out, PauliString::parse("Z1")), 1.0 - p, 1e-12);
    NoiseModel d;
    d.dephasing[1] = p;
    const DensityOperator out2 = apply_noise(DensityOperator(PureState({1}, plus())), d);
    CHECK_NEAR(expectation(out2, PauliString::parse("X1")), 1.0 - 2.0 * p, 1e-12);
  }
}

TEST_CASE("ApplyNoise.RejectsOutOfRange") {
  NoiseModel m;
  m.visibility = 1.5;
  CHECK_THROWS_AS(m.validate(), std::invalid_argument);
  NoiseModel d;
  d.depolarizing[2] = -0.1;
  CHECK_THROWS_AS(apply_noise(DensityOperator(logical_state("0_L")), d), std::invalid_argument);
  CHECK(NoiseModel{}.is_ideal());
  CHECK_FALSE(NoiseModel::white(0.9).is_ideal());
}

TEST_CASE("ApplyNoise.CompletelyPositiveTracePreserving") {
  std::mt19937_64 rng(61);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 30; ++t) {
    NoiseModel m;
    m.visibility = u(rng);
    for (Label q : {1, 2, 3}) {
      m.depolarizing[q] = u(rng);
      m.dephasing[q] = u(rng);
    }
    // Tensoring with a reference qubit probes complete positivity.
    const DensityOperator rho(PureState({1, 2, 3, 9}, random_state(rng, 4)));
    NoiseModel local = m;
    local.visibility = 1.0;
    const DensityOperator out = apply_noise(rho, local);
    CHECK_NEAR(out.matrix().trace().real(), 1.0, 1e-10);
    CHECK(out.min_eigenvalue() >= -1e-9);
    const DensityOperator small(PureState({1, 2, 3}, random_state(rng, 3)));
    const DensityOperator out3 = apply_noise(small, m);
    CHECK_NEAR(out3.matrix().trace().real(), 1.0, 1e-10);
    CHECK(out3.min_eigenvalue() >= -1e-9);
  }
}

TEST_CASE("Sampling.DeterministicPerSeed") {
  const DensityOperator rho(build_resource());
  const std::vector<Label> q{1, 2, 3, 4, 5};
  const auto a = sample_setting_counts(rho, q, "XXXXX", 500, {7, 3});
  const auto b = sample_setting_counts(rho, q, "XXXXX", 500, {7, 3});
  const auto c = sample_setting_counts(rho, q, "XXXXX", 500, {7, 4});
  CHECK(a.histogram == b.histogram);
  CHECK(a.histogram != c.histogram);
  CHECK(a.histogram.size() == 32);
  CHECK(a.setting_label() == "X1X2X3X4X5");
}

TEST_CASE("Sampling.ZeroInZBasisAlwaysZero") {
  const DensityOperator rho(PureState({1}, zero()));
  for (double n : {1.0, 50.0, 5000.0}) {
    const auto r = sample_setting_counts(rho, {1}, "Z", n, {1, 0});
    CHECK(r.histogram.at("1") == 0);
    CHECK(r.histogram.at("0") == r.total());
  }
}

TEST_CASE("Sampling.TotalsArePoisson") {
  const DensityOperator rho(PureState({1}, plus()));
  double sum = 0.0, sq = 0.0;
  const int runs = 400;
  for (int s = 0; s < runs; ++s) {
    const double t = static_cast<double>(sample_setting_counts(rho, {1}, "Z", 200, {5, static_cast<std::uint64_t>(s)}).total());
    sum += t;
    sq += t * t;
  }
  const double mean = sum / runs;
  const double var = sq / runs - mean * mean;
  CHECK_NEAR(mean, 200.0, 3.0);
  CHECK_NEAR(var / mean, 1.0, 0.25);
}

TEST_CASE("Sampling.LargeNConvergesToExactProbabilities") {
  std::mt19937_64 rng(67);
  const Vec psi = random_state(rng, 2);
  // Setting "XZ": rotate qubit 1 by H, then read |amplitude|^2.
  const Matrix hz = kron(Matrix(Matrix(pauli('X') + pauli('Z')) / std::sqrt(2.0)), pauli('I'));
  const Vec rotated = hz * psi;
  const auto r = sample_setting_counts(DensityOperator(PureState({1, 2}, psi)), {1, 2}, "XZ", 1e6, {11, 0});
  const double total = static_cast<double>(r.total());
  const char* names[] = {"00", "01", "10", "11"};
  for (int i = 0; i < 4; ++i) CHECK_NEAR(r.histogram.at(names[i]) / total, std::norm(rotated(i)), 0.005);
}

TEST_CASE("Estimate.Examples") {
  CHECK_NEAR(estimate_expectation(manual({1, 2}, "ZZ", {{"00", 40}, {"11", 60}, {"01", 0}, {"10", 0}}), {1, 2}), 1.0,
             1e-15);
  CHECK_NEAR(estimate_expectation(manual({1}, "X", {{"0", 50}, {"1", 50}}), {1}), 0.0, 1e-15);
  CHECK_NEAR(estimate_expectation(manual({1, 2}, "ZZ", {{"00", 30}, {"01", 10}, {"10", 0}, {"11", 0}}), {2}), 0.5,
             1e-15);
  CHECK_THROWS_AS(estimate_expectation(manual({1}, "Z", {{"0", 0}, {"1", 0}}), {1}), std::invalid_argument);
}

TEST_CASE("Estimate.SyndromeOneOnPlusLogical") {
  const DensityOperator rho(logical_state("+_L"));
  const auto r = sample_setting_counts(rho, {1, 2, 4, 5}, "YZZY", 1e4, {13, 0});
  CHECK_NEAR(estimate_expectation(r, {1, 2, 4, 5}), 1.0, 0.05);
}

TEST_CASE("Estimate.WitnessFromCountsApproachesExact") {
  const auto w = builtin_witness("resource5");
  const DensityOperator rho = apply_noise(DensityOperator(build_resource()), NoiseModel::white(0.8));
  const double exact = evaluate_witness(rho, w).value;
  const std::vector<double> ns{1e2, 1e3, 1e4, 1e6};
  std::vector<double> err;
  for (double n : ns) {
    double e = 0.0;
    for (std::uint64_t s = 0; s < 10; ++s) e += std::abs(witness_sampled(rho, w, n, 100 + s) - exact);
    err.push_back(e / 10.0);
  }
  for (std::size_t i = 1; i < err.size(); ++i) CHECK(err[i] < err[i - 1]);
  CHECK(err.back() < 0.01);
}

TEST_CASE("MonteCarlo.ConstantStatisticHasZeroSpread") {
  const auto counts = sample_witness_counts(DensityOperator(build_resource()), builtin_witness("resource5"), 500, {1, 0});
  const auto u = monte_carlo_uncertainty([](const std::vector<CountRecord>&) { return 0.25; }, counts, 100, {2, 0});
  CHECK_NEAR(u.mean, 0.25, 1e-15);
  CHECK_NEAR(u.std, 0.0, 1e-15);
  CHECK_THROWS_AS(monte_carlo_uncertainty([](const std::vector<CountRecord>&) { return 0.0; }, counts, 99, {2, 0}),
                  std::invalid_argument);
}

TEST_CASE("MonteCarlo.DeterministicAndThreadInvariant") {
  const auto w = builtin_witness("resource5");
  const DensityOperator rho = apply_noise(DensityOperator(build_resource()), NoiseModel::white(0.8));
  const auto counts = sample_witness_counts(rho, w, 500, {3, 0});
  const CountStatistic stat = [&](const std::vector<CountRecord>& c) { return estimate_witness(c, w); };
  const auto a = monte_carlo_uncertainty(stat, counts, 200, {4, 1}, 1);
  const auto b = monte_carlo_uncertainty(stat, counts, 200, {4, 1}, 1);
  const auto c = monte_carlo_uncertainty(stat, counts, 200, {4, 1}, 4);
  CHECK(a.mean == b.mean);
  CHECK(a.std == b.std);
  CHECK(a.mean == c.mean);
  CHECK(a.std == c.std);
}

TEST_CASE("MonteCarlo.StdScalesAsInverseRootN") {
  const auto w = builtin_witness("resource5");
  const DensityOperator rho = apply_noise(DensityOperator(build_resource()), NoiseModel::white(0.765));
  const CountStatistic stat = [&](const std::vector<CountRecord>& c) { return estimate_witness(c, w); };
  auto mean_std = [&](double n) {
    double s = 0.0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const auto counts = sample_witness_counts(rho, w, n, {seed, 0});
      s += monte_carlo_uncertainty(stat, counts, 200, {seed, 1}).std;
    }
    return s / 10.0;
  };
  const double ratio = mean_std(500) / mean_std(2000);
  CHECK(ratio > 2.0 * 0.75);
  CHECK(ratio < 2.0 * 1.25);
}

TEST_CASE("CountsCsv.RoundTrip") {
  const auto w = builtin_witness("ghz4");
  const auto counts = sample_witness_counts(DensityOperator(logical_state("0_L")), w, 300, {9, 0});
  std::stringstream buf;
  write_counts_csv(buf, counts);
  const std::string text = buf.str();
  CHECK(text.rfind("setting,outcome,count\n", 0) == 0);
  const auto back = read_counts_csv(buf);
  REQUIRE(back.size() == counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i) {
    CHECK(back[i].qubits == counts[i].qubits);
    CHECK(back[i].setting == counts[i].setting);
    CHECK(back[i].histogram == counts[i].histogram);
  }
  CHECK(estimate_witness(back, w) == estimate_witness(counts, w));
}

TEST_CASE("CountsCsv.RejectsMalformedInput") {
  std::stringstream a("setting,outcome,count\nX1X2,01\n");
  CHECK_THROWS_AS(read_counts_csv(a), std::invalid_argument);
  std::stringstream b("setting,outcome,count\nX1X2,0a,3\n");
  CHECK_THROWS_AS(read_counts_csv(b), std::invalid_argument);
  std::stringstream c("setting,outcome,count\nX1X2,01,-3\n");
  CHECK_THROWS_AS(read_counts_csv(c), std::invalid_argument);
}

TEST_CASE("Bisect.FindsRoot") {
  CHECK_NEAR(bisect([](double x) { return x * x; }, 0.25, 0.0, 1.0), 0.5, 1e-9);
  CHECK_THROWS_AS(bisect([](double x) { return x; }, 5.0, 0.0, 1.0), std::domain_error);
}

TEST_SUITE_END();

}  // namespace
}  // namespace graphcode
