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

#ifndef GRAPHCODE_TOMOGRAPHY_HPP
#define GRAPHCODE_TOMOGRAPHY_HPP

#include <array>
#include <functional>
#include <map>
#include <span>
#include <vector>

#include "graphcode/code412.hpp"
#include "graphcode/kernel.hpp"

namespace graphcode {

using Bloch = std::array<double, 3>;

/// Below this eigenvalue a reconstructed 2x2 matrix is flagged as unphysical.
constexpr double kUnphysicalEigenvalue = -0.05;

struct LogicalDensityMatrix {
  Matrix rho;
  /// <X-bar>, <Y-bar>, <Z-bar>.
  Bloch expectations;
  double min_eigenvalue;
  bool flagged;
};

/// rho_L = (I + <X>X + <Y>Y + <Z>Z)/2 from the logical operators on qubits 1, 2, 4, 5.
LogicalDensityMatrix logical_tomography(const DensityOperator& rho);
LogicalDensityMatrix logical_tomography(const PureState& psi);
LogicalDensityMatrix logical_from_expectations(const Bloch& e);

/// <psi|rho|psi>, clamped to [0, 1].
double state_fidelity(const DensityOperator& rho, const PureState& target);
double state_fidelity(const Matrix& rho, const Vector& target);

Matrix density_from_bloch(const Bloch& r);
Bloch bloch_vector(const Matrix& rho);

/// Process matrix in the {I, X, Y, Z} basis: e(rho) = sum_mn chi_mn M_m rho M_n^dagger.
class ChiMatrix {
 public:
  explicit ChiMatrix(Matrix m);

  static ChiMatrix identity();
  static ChiMatrix hadamard();
  static ChiMatrix from_unitary(const Matrix& u);
  static ChiMatrix from_kraus(std::span<const Matrix> kraus);
  /// (1 - p) rho + p I/2.
  static ChiMatrix depolarizing(double p);

  const Matrix& matrix() const { return m_; }
  cplx operator()(int m, int n) const { return m_(m, n); }
  double trace() const { return m_.trace().real(); }

  Matrix apply(const Matrix& rho) const;
  /// || sum chi_mn M_n^dagger M_m - I ||.
  double trace_preservation_error() const;
  double min_eigenvalue() const;
  bool is_physical(double tol = 1e-9) const;

 private:
  Matrix m_;
};

/// Output density matrices (2x2) for the four probes.
struct ChannelSample {
  std::map<Probe, Matrix> outputs;
};

ChannelSample sample_channel(const std::function<Matrix(const AncillaState&)>& channel);

/// Linear inversion. Throws std::invalid_argument if a probe is missing.
ChiMatrix reconstruct_chi(const ChannelSample& sample);

/// Tr(a b) / (Tr a Tr b). Throws std::domain_error on a zero trace.
double process_fidelity(const ChiMatrix& a, const ChiMatrix& b);
double average_probe_fidelity(std::span<const double> fidelities);
/// Average over the Bloch sphere, (2 F_p + 1)/3.
double sphere_average_fidelity(double process_fidelity);

struct BlochImage {
  std::vector<Bloch> points;
  /// Some image left the unit ball, so the map is not physical.
  bool expands;
};

BlochImage bloch_image(const ChiMatrix& chi, std::span<const Bloch> points);
/// 6 axis points plus 8 cube diagonals, all of unit length.
std::vector<Bloch> reference_sphere_points();

}  // namespace graphcode

#endif  // GRAPHCODE_TOMOGRAPHY_HPP
