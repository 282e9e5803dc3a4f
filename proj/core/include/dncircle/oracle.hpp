// Copyright 2026 The dncircle Authors
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

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "dncircle/phasespace.hpp"
#include "dncircle/protocol.hpp"
#include "dncircle/quadrature.hpp"
#include "dncircle/states.hpp"

namespace dncircle::oracle {

using cdouble = std::complex<double>;

/// Truncated Fock-basis density matrix.
struct FockDensity {
  Eigen::MatrixXcd rho;

  std::size_t dim() const { return static_cast<std::size_t>(rho.rows()); }

  static FockDensity from_vector(const states::FockVector& v);
  /// Bose-Einstein populations nbar^m / (1+nbar)^(m+1), m < dim.
  static FockDensity thermal(double nbar, std::size_t dim);

  double trace_defect() const;
  double hermiticity_defect() const;
  double min_eigenvalue() const;
  /// Throws UsageError if Hermiticity, trace or positivity are violated.
  void validate(double hermiticity_tol = 1e-10, double trace_tol = 1e-8,
                double eigen_tol = 1e-8) const;
};

struct EvolveOptions {
  double tolerance = 1e-9;          // Richardson error estimate, max abs entry
  double leakage_tolerance = 1e-8;  // norm lost through the truncation edge
  std::size_t max_steps = std::size_t(1) << 22;
};

struct EvolveDiagnostics {
  std::size_t steps = 0;
  double error_estimate = 0.0;
  double trace_defect = 0.0;
  double hermiticity_defect = 0.0;
};

/// Classic RK4 on the damped-oscillator master equation, halving the step
/// until the Richardson estimate meets options.tolerance. The trace is not
/// renormalized. Throws TruncationError when the truncation edge leaks more
/// than options.leakage_tolerance and StepSizeUnderflowError past max_steps.
FockDensity evolve_density(const FockDensity& rho0, const phasespace::ReservoirParams& res, double t,
                           const EvolveOptions& options = {}, EvolveDiagnostics* diagnostics = nullptr);

/// Wigner function of rho at (p, q), unit integral, z = q + i p.
double wigner_from_density(const FockDensity& rho, double p, double q);

double purity(const FockDensity& rho);
double diagonal_purity_fock(const FockDensity& rho);
std::vector<double> populations(const FockDensity& rho);
/// Tr(a rho).
cdouble mean_annihilation(const FockDensity& rho);

/// Bichromatic step through a spectral decomposition of the rotated
/// quadrature X_theta in an enlarged truncated basis.
protocol::VibronicState step2_state_by_diagonalization(int n, cdouble beta, double varphi,
                                                       std::size_t dim);

/// Radius R such that |W0| < clip on the boundary of [-R, R]^2.
double support_radius(const states::SuperpositionSpec& spec, double clip = 1e-14);

struct ConvolutionOptions {
  double tolerance = 1e-8;
  std::size_t initial_nodes = 32;
  std::size_t max_nodes = 1024;
  double clip = 1e-14;
};

struct ConvolutionResult {
  std::vector<double> values;
  std::size_t nodes_per_axis = 0;
  double last_change = 0.0;
  double radius = 0.0;
};

/// Kernel propagation of the initial Wigner function to time t > 0 at each
/// (p, q) point. Nodes per axis double until the largest pointwise change is
/// below options.tolerance; BudgetExhaustedError past max_nodes.
ConvolutionResult wigner_convolution(const states::SuperpositionSpec& spec,
                                     const phasespace::ReservoirParams& res, double t,
                                     std::span<const std::pair<double, double>> points,
                                     const ConvolutionOptions& options = {});

struct PurityQuadOptions {
  double tolerance = 1e-8;
  std::size_t initial_nodes = 16;
  std::size_t max_nodes = 256;
  double clip = 1e-14;
};

/// Total purity as the 4D integral of the difference kernel against two
/// copies of the initial Wigner function. Equals Tr rho^2. Requires u in (0, 1).
QuadResult total_purity_quadrature(const states::SuperpositionSpec& spec, double nbar, double u,
                                   const PurityQuadOptions& options = {});

/// Diagonal purity as the 4D integral of the radial Bessel kernel. Equals
/// sum_m P_m^2. Requires u in (0, 1).
QuadResult diagonal_purity_quadrature(const states::SuperpositionSpec& spec, double nbar, double u,
                                      const PurityQuadOptions& options = {});

}  // namespace dncircle::oracle
