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

#include "dncircle/states.hpp"

#include <cmath>
#include <string>

#include "dncircle/errors.hpp"
#include "dncircle/specfun.hpp"

namespace dncircle::states {

namespace {

constexpr std::size_t kMaxSearchDim = 4096;
// Closed-form sums that cancel below this fraction of their magnitude are
// replaced by the positive-term Fock series.
constexpr double kCancellationLimit = 1e-3;

// sum_r <m|D(b e^{i t_r})|n> with t_r = theta1 + 2 pi r / N. Each term is
// e^{i (m - n) t_r} <m|D(b)|n>, and the phase sum is N e^{i (m - n) theta1}
// when N divides m - n and zero otherwise.
cdouble sum_of_components(const SuperpositionSpec& spec, int m) {
  const int k = m - spec.n;
  if (k % spec.components != 0) return 0.0;
  return double(spec.components) * std::polar(1.0, k * spec.theta1) *
         displaced_number_overlap(m, spec.n, spec.beta_abs);
}

}  // namespace

SuperpositionSpec SuperpositionSpec::circle(int n, int components, double beta_abs) {
  SuperpositionSpec s;
  s.n = n;
  s.components = components;
  s.beta_abs = beta_abs;
  s.theta1 = components > 0 ? 2.0 * std::numbers::pi / components : 0.0;
  s.validate();
  return s;
}

SuperpositionSpec SuperpositionSpec::from_cycles(int n, int cycles, double beta_abs) {
  if (cycles < 0 || cycles > 20) throw UsageError("cycle count must lie in [0, 20]");
  return circle(n, 1 << (cycles + 1), beta_abs);
}

cdouble SuperpositionSpec::component(int r) const {
  return std::polar(beta_abs, theta1 + 2.0 * std::numbers::pi * r / components);
}

std::vector<cdouble> SuperpositionSpec::displacements() const {
  std::vector<cdouble> out(static_cast<std::size_t>(components));
  for (int r = 0; r < components; ++r) out[r] = component(r);
  return out;
}

void SuperpositionSpec::validate() const {
  if (n < 0) throw UsageError("excitation degree n must be >= 0");
  if (components < 1) throw UsageError("component count N must be >= 1");
  if (!(beta_abs >= 0.0) || !std::isfinite(beta_abs)) throw UsageError("|beta| must be finite and >= 0");
  if (!std::isfinite(theta1)) throw UsageError("theta1 must be finite");
}

double FockVector::squared_norm() const {
  double s = 0.0;
  for (const auto& a : amps) s += std::norm(a);
  return s;
}

double superposition_norm_squared(const SuperpositionSpec& spec) {
  spec.validate();
  // <m|D(b e^{i t})|n> = e^{i (m - n) t} <m|D(b)|n>, so only m = n (mod N) survive.
  const int N = spec.components;
  const double b = spec.beta_abs;
  const double bulk = (b + std::sqrt(double(spec.n)) + 1.0) * (b + std::sqrt(double(spec.n)) + 1.0);
  double sum = 0.0;
  for (int m = spec.n % N;; m += N) {
    const double term = std::norm(displaced_number_overlap(m, spec.n, b));
    sum += term;
    if (double(m) > bulk && term <= 1e-18 * sum) break;
    if (m > static_cast<int>(kMaxSearchDim) * 16) break;
  }
  return double(N) * double(N) * sum;
}

double normalization_constant(const SuperpositionSpec& spec) {
  spec.validate();
  const int N = spec.components;
  const double b2 = spec.beta_abs * spec.beta_abs;
  const double phi = spec.half_angle();
  double radicand = N, magnitude = N;
  for (int r = 1; r < N; ++r) {
    const double s = std::sin((N - r) * phi);
    const double s2 = s * s;
    const double term = 2.0 * r * std::exp(-2.0 * b2 * s2) * std::cos(b2 * std::sin(2.0 * (N - r) * phi)) *
                        specfun::laguerre(spec.n, 0.0, 4.0 * b2 * s2);
    radicand += term;
    magnitude += std::fabs(term);
  }
  if (!(radicand > kCancellationLimit * magnitude)) radicand = superposition_norm_squared(spec);
  if (!(radicand > 0.0)) {
    throw DegenerateStateError("normalization radicand is not positive (" + std::to_string(radicand) + ")");
  }
  return 1.0 / std::sqrt(radicand);
}

cdouble displaced_number_overlap(int m, int n, cdouble beta) {
  if (m < 0 || n < 0) throw UsageError("displaced_number_overlap: negative Fock index");
  const double b = std::abs(beta);
  const double b2 = b * b;
  if (b == 0.0) return m == n ? cdouble(1.0) : cdouble(0.0);
  const double arg = std::arg(beta);
  if (m >= n) {
    const int d = m - n;
    const double log_mag = 0.5 * (specfun::log_factorial(n) - specfun::log_factorial(m)) +
                           d * std::log(b) - 0.5 * b2;
    return std::polar(std::exp(log_mag), d * arg) * specfun::laguerre(n, double(d), b2);
  }
  const int d = n - m;
  const double log_mag = 0.5 * (specfun::log_factorial(m) - specfun::log_factorial(n)) +
                         d * std::log(b) - 0.5 * b2;
  return std::polar(std::exp(log_mag), d * (std::numbers::pi - arg)) * specfun::laguerre(m, double(d), b2);
}

std::size_t default_dim(const SuperpositionSpec& spec) {
  spec.validate();
  const double b = spec.beta_abs;
  std::size_t dim =
      static_cast<std::size_t>(std::ceil(b * b) + 6.0 * std::ceil(b)) + static_cast<std::size_t>(spec.n) + 10;
  // Wider tails for larger n: extend until the loss bound holds.
  const double norm = normalization_constant(spec);
  double kept = 0.0;
  for (std::size_t m = 0; m < dim; ++m) kept += std::norm(norm * sum_of_components(spec, static_cast<int>(m)));
  while (1.0 - kept > kDefaultTruncationThreshold && dim < kMaxSearchDim) {
    kept += std::norm(norm * sum_of_components(spec, static_cast<int>(dim)));
    ++dim;
  }
  return dim;
}

FockVector build_fock_vector(const SuperpositionSpec& spec, std::size_t dim, double max_loss) {
  spec.validate();
  if (dim <= static_cast<std::size_t>(spec.n)) {
    throw UsageError("Fock dimension " + std::to_string(dim) + " must exceed n = " + std::to_string(spec.n));
  }
  const double norm = normalization_constant(spec);
  FockVector v;
  v.amps.resize(dim);
  double kept = 0.0;
  for (std::size_t m = 0; m < dim; ++m) {
    v.amps[m] = norm * sum_of_components(spec, static_cast<int>(m));
    kept += std::norm(v.amps[m]);
  }
  v.truncation_loss = 1.0 - kept;
  if (v.truncation_loss > max_loss) {
    std::size_t required = dim;
    double loss = v.truncation_loss;
    while (loss > max_loss && required < kMaxSearchDim) {
      loss -= std::norm(norm * sum_of_components(spec, static_cast<int>(required)));
      ++required;
    }
    throw TruncationError("Fock truncation at dim " + std::to_string(dim) + " loses " +
                              std::to_string(v.truncation_loss) + " of the norm",
                          required);
  }
  return v;
}

FockVector build_fock_vector(const SuperpositionSpec& spec) {
  return build_fock_vector(spec, default_dim(spec));
}

FockVector displaced_number_state(int n, cdouble beta, std::size_t dim) {
  FockVector v;
  v.amps.resize(dim);
  double kept = 0.0;
  for (std::size_t m = 0; m < dim; ++m) {
    v.amps[m] = displaced_number_overlap(static_cast<int>(m), n, beta);
    kept += std::norm(v.amps[m]);
  }
  v.truncation_loss = 1.0 - kept;
  return v;
}

cdouble inner_product(const FockVector& a, const FockVector& b) {
  const std::size_t d = std::min(a.dim(), b.dim());
  cdouble s(0.0);
  for (std::size_t k = 0; k < d; ++k) s += std::conj(a.amps[k]) * b.amps[k];
  return s;
}

}  // namespace dncircle::states
