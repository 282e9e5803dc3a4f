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
#include <vector>

namespace dncircle::specfun {

using cdouble = std::complex<double>;

/// |z| above which the modified Bessel functions switch from the power series
/// (or backward recurrence) to the large-argument expansion.
inline constexpr double kBesselAsymptoticThreshold = 20.0;

/// Generalized Laguerre polynomial L_n^(alpha)(z), alpha > -1, by the upward
/// three-term recurrence.
cdouble laguerre(int n, double alpha, cdouble z);
double laguerre(int n, double alpha, double z);

/// Monomial coefficients c_k of L_n^(alpha)(z) = sum_k c_k z^k, k = 0..n.
std::vector<double> laguerre_coefficients(int n, double alpha);

/// Modified Bessel function of the first kind I_nu(z) for integer nu >= 0.
///
/// |z| <= 20: power series, replaced by Miller backward recurrence when the
/// series is ill conditioned (large imaginary part, where I_nu behaves like
/// J_nu). |z| > 20: large-argument expansion with both exponential branches,
/// valid for every phase of z.
cdouble bessel_i(int nu, cdouble z);
cdouble bessel_i0(cdouble z);

/// I_0 .. I_order at the same argument.
std::vector<cdouble> bessel_i_sequence(int order, cdouble z);

/// exp(-|x|) I_0(x) for real x, safe for large x.
double bessel_i0_scaled(double x);

/// Taylor coefficients c_k = I_0^(k)(z0) / k!, k = 0..order.
std::vector<cdouble> bessel_i0_taylor(cdouble z0, int order);

/// log(k!) for k >= 0.
double log_factorial(int k);

/// Binomial coefficient as a double.
double binomial(int n, int k);

}  // namespace dncircle::specfun
