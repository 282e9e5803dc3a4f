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

// Brute-force reference computations shared by the unit tests. None of these
// call into the library.

#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <numbers>
#include <unsupported/Eigen/MatrixFunctions>
#include <vector>

namespace dncircle::testing {

using cdouble = std::complex<double>;

/// L_n^(alpha)(z) = sum_k (-1)^k C(n+alpha, n-k) z^k / k! in long double.
inline std::complex<long double> laguerre_series(int n, double alpha, std::complex<long double> z) {
  // c_k = (-1)^k C(n+alpha, n-k) / k!, built by exact ratios from c_0 = C(n+alpha, n).
  long double c = 1.0L;
  for (int j = 1; j <= n; ++j) c *= (static_cast<long double>(alpha) + j) / j;
  std::complex<long double> sum = 0.0L, zk = 1.0L;
  for (int k = 0; k <= n; ++k) {
    sum += c * zk;
    zk *= z;
    c *= -static_cast<long double>(n - k) / ((k + 1.0L) * (k + 1.0L + static_cast<long double>(alpha)));
  }
  return sum;
}

/// (1/pi) int_0^pi e^{z cos t} cos(nu t) dt by the trapezoid rule, which is
/// spectrally accurate for this periodic integrand.
inline cdouble bessel_i_integral(int nu, cdouble z, int panels = 4096) {
  cdouble sum = 0.0;
  const double h = std::numbers::pi / panels;
  for (int k = 0; k <= panels; ++k) {
    const double t = k * h;
    const double w = (k == 0 || k == panels) ? 0.5 : 1.0;
    sum += w * std::exp(z * std::cos(t)) * std::cos(nu * t);
  }
  return sum * h / std::numbers::pi;
}

/// Displacement operator exp(b a^dag - b^* a) on a truncated basis.
inline Eigen::MatrixXcd displacement_matrix(cdouble beta, int dim) {
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(dim, dim);
  for (int m = 1; m < dim; ++m) a(m - 1, m) = std::sqrt(double(m));
  const Eigen::MatrixXcd gen = beta * a.adjoint() - std::conj(beta) * a;
  return gen.exp();
}

/// Unnormalized sum_r D(beta_r)|n> with beta_r = b e^{i(theta1 + 2 pi r / N)}.
inline Eigen::VectorXcd superposition_by_expm(int n, int N, double b, double theta1, int dim) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
  for (int r = 0; r < N; ++r) {
    const cdouble beta = std::polar(b, theta1 + 2.0 * std::numbers::pi * r / N);
    v += displacement_matrix(beta, dim).col(n);
  }
  return v;
}

/// Central difference of f along one axis with Richardson extrapolation.
template <class F>
double richardson_derivative(F f, double x, double h) {
  const double d1 = (f(x + h) - f(x - h)) / (2.0 * h);
  const double d2 = (f(x + 0.5 * h) - f(x - 0.5 * h)) / h;
  return (4.0 * d2 - d1) / 3.0;
}

}  // namespace dncircle::testing
