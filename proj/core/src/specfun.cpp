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

#include "dncircle/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "dncircle/errors.hpp"

namespace dncircle::specfun {

namespace {

template <class T>
T laguerre_impl(int n, double alpha, T z) {
  if (n < 0) throw UsageError("laguerre: negative degree");
  if (n == 0) return T(1.0);
  T prev(1.0);
  T cur = T(1.0 + alpha) - z;
  for (int k = 1; k < n; ++k) {
    T next = ((T(2.0 * k + 1.0 + alpha) - z) * cur - T(k + alpha) * prev) / T(k + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

// Power series for I_nu with a running estimate of its condition number
// (sum of term magnitudes over magnitude of the sum).
cdouble bessel_series(int nu, cdouble z, double* condition) {
  const cdouble half = 0.5 * z;
  const cdouble q = half * half;
  cdouble term(1.0);
  for (int j = 1; j <= nu; ++j) term *= half / double(j);
  cdouble sum = term;
  double abs_sum = std::abs(term);
  for (int k = 1; k < 500; ++k) {
    term *= q / (double(k) * double(k + nu));
    sum += term;
    abs_sum += std::abs(term);
    if (std::abs(term) <= 1e-18 * std::abs(sum) && double(k) > std::abs(half)) break;
  }
  if (condition) {
    const double mag = std::abs(sum);
    *condition = mag > 0.0 ? abs_sum / mag : (abs_sum > 0.0 ? 1e300 : 1.0);
  }
  return sum;
}

// Miller backward recurrence for I_0..I_order, normalized with
// e^z = I_0 + 2 sum_k I_k. Requires Re z >= 0 and z != 0.
std::vector<cdouble> bessel_miller(int order, cdouble z) {
  const double az = std::abs(z);
  const int start = std::max(order, int(az)) + 40 + int(2.0 * std::sqrt(40.0 * std::max(az, 1.0)));
  std::vector<cdouble> f(static_cast<std::size_t>(start) + 2, cdouble(0.0));
  f[start + 1] = 0.0;
  f[start] = 1e-30;
  for (int k = start; k >= 1; --k) {
    f[k - 1] = (2.0 * k / z) * f[k] + f[k + 1];
    if (std::abs(f[k - 1]) > 1e250) {
      for (int j = k - 1; j <= start + 1; ++j) f[j] *= 1e-250;
    }
  }
  cdouble norm = f[0];
  for (int k = 1; k <= start; ++k) norm += 2.0 * f[k];
  const cdouble scale = std::exp(z) / norm;
  std::vector<cdouble> out(static_cast<std::size_t>(order) + 1);
  for (int k = 0; k <= order; ++k) out[k] = f[k] * scale;
  return out;
}

// Large-argument expansion, Re z >= 0. Both exponential branches are kept so
// the result stays accurate near the imaginary axis.
cdouble bessel_asymptotic(int nu, cdouble z) {
  const double mu = 4.0 * nu * nu;
  cdouble alt(1.0), plain(1.0);
  cdouble ak(1.0);
  double last = 1.0;
  for (int k = 1; k < 200; ++k) {
    const double odd = 2.0 * k - 1.0;
    ak *= (mu - odd * odd) / (8.0 * k) / z;
    const double mag = std::abs(ak);
    if (mag > last) break;  // past the smallest term
    last = mag;
    alt += (k % 2 == 0 ? 1.0 : -1.0) * ak;
    plain += ak;
    if (mag < 1e-18) break;
  }
  const cdouble root = std::sqrt(2.0 * std::numbers::pi * z);
  const double sign = (nu % 2 == 0) ? 1.0 : -1.0;
  const cdouble i(0.0, 1.0);
  const cdouble branch = (z.imag() >= 0.0 ? i : -i) * sign;
  return (std::exp(z) * alt + branch * std::exp(-z) * plain) / root;
}

cdouble bessel_positive_half(int nu, cdouble z) {
  if (std::abs(z) > kBesselAsymptoticThreshold) return bessel_asymptotic(nu, z);
  double condition = 1.0;
  const cdouble s = bessel_series(nu, z, &condition);
  if (condition < 1e3) return s;
  return bessel_miller(nu, z)[nu];
}

}  // namespace

cdouble laguerre(int n, double alpha, cdouble z) { return laguerre_impl<cdouble>(n, alpha, z); }

double laguerre(int n, double alpha, double z) { return laguerre_impl<double>(n, alpha, z); }

std::vector<double> laguerre_coefficients(int n, double alpha) {
  if (n < 0) throw UsageError("laguerre_coefficients: negative degree");
  std::vector<double> c(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) {
    double prod = 1.0;
    for (int j = k + 1; j <= n; ++j) prod *= (alpha + j);
    const double denom = std::exp(log_factorial(k) + log_factorial(n - k));
    c[k] = ((k % 2 == 0) ? 1.0 : -1.0) * prod / denom;
  }
  return c;
}

cdouble bessel_i(int nu, cdouble z) {
  if (nu < 0) nu = -nu;  // I_{-n} = I_n for integer order
  if (z.real() < 0.0) {
    const cdouble v = bessel_positive_half(nu, -z);
    return (nu % 2 == 0) ? v : -v;
  }
  return bessel_positive_half(nu, z);
}

cdouble bessel_i0(cdouble z) { return bessel_i(0, z); }

std::vector<cdouble> bessel_i_sequence(int order, cdouble z) {
  if (order < 0) throw UsageError("bessel_i_sequence: negative order");
  std::vector<cdouble> out(static_cast<std::size_t>(order) + 1);
  for (int k = 0; k <= order; ++k) out[k] = bessel_i(k, z);
  return out;
}

double bessel_i0_scaled(double x) {
  const double ax = std::fabs(x);
  if (ax <= kBesselAsymptoticThreshold) return std::exp(-ax) * bessel_series(0, cdouble(ax), nullptr).real();
  double sum = 1.0, term = 1.0, last = 1.0;
  for (int k = 1; k < 200; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= odd * odd / (8.0 * k * ax);
    if (term > last) break;
    last = term;
    sum += term;
    if (term < 1e-18) break;
  }
  return sum / std::sqrt(2.0 * std::numbers::pi * ax);
}

std::vector<cdouble> bessel_i0_taylor(cdouble z0, int order) {
  if (order < 0) throw UsageError("bessel_i0_taylor: negative order");
  const auto seq = bessel_i_sequence(order, z0);
  std::vector<cdouble> c(static_cast<std::size_t>(order) + 1);
  // I_0^(k) = 2^-k sum_j C(k, j) I_{|k - 2j|}
  for (int k = 0; k <= order; ++k) {
    cdouble d(0.0);
    for (int j = 0; j <= k; ++j) d += binomial(k, j) * seq[std::abs(k - 2 * j)];
    c[k] = d * std::ldexp(1.0, -k) / std::exp(log_factorial(k));
  }
  return c;
}

double log_factorial(int k) {
  if (k < 0) throw UsageError("log_factorial: negative argument");
  return std::lgamma(double(k) + 1.0);
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double r = 1.0;
  for (int j = 1; j <= k; ++j) r = r * double(n - k + j) / double(j);
  return n <= 60 ? std::round(r) : r;
}

}  // namespace dncircle::specfun
