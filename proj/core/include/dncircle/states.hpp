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

#include <complex>
#include <cstddef>
#include <numbers>
#include <vector>

namespace dncircle::states {

using cdouble = std::complex<double>;

/// Equal-weight superposition of `components` displaced number states
/// D(beta_r)|n>, with beta_r = beta_abs * exp(i theta_r) and
/// theta_r = theta1 + 2 pi (r - 1) / components.
struct SuperpositionSpec {
  int n = 0;
  int components = 1;
  double beta_abs = 0.0;
  double theta1 = 2.0 * std::numbers::pi;

  /// Circle of N components with the protocol's phase convention theta_r = 2 pi r / N.
  static SuperpositionSpec circle(int n, int components, double beta_abs);
  /// Circle reached after `cycles` pulse cycles: N = 2^(cycles + 1).
  static SuperpositionSpec from_cycles(int n, int cycles, double beta_abs);

  /// Half angle between neighbouring components, pi / N.
  double half_angle() const { return std::numbers::pi / components; }
  /// Displacement of component r, r = 0 .. N-1.
  cdouble component(int r) const;
  std::vector<cdouble> displacements() const;

  /// Throws UsageError unless n >= 0, N >= 1 and beta_abs >= 0.
  void validate() const;
};

/// Truncated Fock-basis amplitudes plus the squared norm lost to truncation.
struct FockVector {
  std::vector<cdouble> amps;
  double truncation_loss = 0.0;

  std::size_t dim() const { return amps.size(); }
  double squared_norm() const;
};

/// ||sum_r D(beta_r)|n>||^2 as the positive series N^2 sum_{m = n mod N} |<m|D(|b|)|n>|^2.
double superposition_norm_squared(const SuperpositionSpec& spec);

/// Normalization constant N_n^(N) of the circle superposition. Depends only
/// on |beta| and the phase spacing. Falls back to superposition_norm_squared
/// when the closed-form sum cancels. Throws DegenerateStateError when the
/// radicand is not positive.
double normalization_constant(const SuperpositionSpec& spec);

/// <m| D(beta) |n>.
///
/// m >= n: sqrt(n!/m!) beta^(m-n) e^{-|beta|^2/2} L_n^(m-n)(|beta|^2)
/// m <  n: sqrt(m!/n!) (-beta*)^(n-m) e^{-|beta|^2/2} L_m^(n-m)(|beta|^2)
///
/// with D(beta) = exp(beta a^dag - beta^* a). Factorial ratios and powers are
/// accumulated in logarithms so m up to a few hundred is safe.
cdouble displaced_number_overlap(int m, int n, cdouble beta);

/// Default truncation: ceil(|b|^2) + 6 ceil(|b|) + n + 10, extended as needed
/// so the lost norm stays below kDefaultTruncationThreshold.
std::size_t default_dim(const SuperpositionSpec& spec);

/// Truncation loss accepted by build_fock_vector unless overridden.
inline constexpr double kDefaultTruncationThreshold = 1e-10;

/// Amplitudes N sum_r <m|D(beta_r)|n> for m < dim. Throws UsageError if
/// dim <= n and TruncationError naming the smallest adequate dim when the
/// lost norm exceeds `max_loss`.
FockVector build_fock_vector(const SuperpositionSpec& spec, std::size_t dim,
                             double max_loss = kDefaultTruncationThreshold);
FockVector build_fock_vector(const SuperpositionSpec& spec);

/// D(beta)|n> truncated to dim levels (no loss check).
FockVector displaced_number_state(int n, cdouble beta, std::size_t dim);

/// <a|b> over the common truncation.
cdouble inner_product(const FockVector& a, const FockVector& b);

}  // namespace dncircle::states
