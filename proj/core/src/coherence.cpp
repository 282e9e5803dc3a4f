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

#include "dncircle/coherence.hpp"

#include <cmath>
#include <complex>
#include <numbers>

#include "dncircle/errors.hpp"
#include "dncircle/jet.hpp"
#include "dncircle/specfun.hpp"

namespace dncircle::coherence {

namespace {

using specfun::Jet2;
using cdouble = std::complex<double>;
using Var = Jet2::Variable;
constexpr double kPi = std::numbers::pi;
constexpr cdouble kI(0.0, 1.0);

void check_inputs(const SuperpositionSpec& spec, double nbar, double u) {
  spec.validate();
  if (!(nbar >= 0.0) || !std::isfinite(nbar)) throw UsageError("nbar must be finite and >= 0");
  if (!(u >= 0.0 && u < 1.0)) throw UsageError("compact time must lie in [0, 1)");
}

double variable_scale(ClosedForm form) { return form == ClosedForm::corrected ? 2.0 : 1.0; }

// Kernel argument X = scale (x - 1) + 1 as a jet about x = 1.
Jet2 kernel_argument(Var which, int ox, int oy, double scale) {
  return Jet2::variable(which, ox, oy) * scale - (scale - 1.0);
}

double real_part(cdouble v) { return v.real(); }

double mu_impl(const SuperpositionSpec& spec, double nbar, double u, ClosedForm form) {
  const int n = spec.n, N = spec.components;
  const double b2 = spec.beta_abs * spec.beta_abs;
  const double c = 1.0 + 2.0 * nbar;
  const double cu = c * u;
  const double norm = states::normalization_constant(spec);
  const double scale = variable_scale(form);

  const Jet2 X = kernel_argument(Var::x, n, n, scale);
  const Jet2 Y = kernel_argument(Var::y, n, n, scale);
  const Jet2 Ax = X * (2.0 * cu) + (1.0 - u);
  const Jet2 Ay = Y * (2.0 * cu) + (1.0 - u);
  const Jet2 inv_den = specfun::reciprocal(X * Ay + Y * (1.0 - u));

  std::vector<Jet2> U, V;
  std::vector<double> cosd;
  for (int d = 0; d < N; ++d) {
    const double cd = std::cos(kPi * d / N), sd = std::sin(kPi * d / N);
    cosd.push_back(cd);
    U.push_back(X * cd + kI * sd);
    V.push_back(Y * cd + kI * sd);
  }
  Jet2 H(n, n);
  for (int d1 = 0; d1 < N; ++d1) {
    const Jet2 AyUU = Ay * U[d1] * U[d1];
    for (int d2 = 0; d2 < N; ++d2) {
      const Jet2 UV = U[d1] * V[d2];
      const Jet2 base = AyUU + Ax * V[d2] * V[d2];
      const Jet2 D = U[d1] * cosd[d1] + V[d2] * cosd[d2];
      for (int k = 0; k < N; ++k) {
        const double cs = std::cos(kPi * double(d1 - d2 + 2 * k) / N);
        const Jet2 C = (base + UV * (2.0 * (1.0 - u) * cs)) * inv_den;
        H += specfun::exp((C - D) * (2.0 * b2));
      }
    }
  }
  const Jet2 xy = specfun::pow(Jet2::variable(Var::x, n, n) * Jet2::variable(Var::y, n, n), n);
  const Jet2 F = xy * H * inv_den;
  const double pref = 2.0 * norm * norm;
  return 0.5 * pref * pref * double(N) * real_part(F.coeff(n, n));
}

double lambda_impl(const SuperpositionSpec& spec, double nbar, double u, ClosedForm form) {
  const int n = spec.n, N = spec.components;
  const double b2 = spec.beta_abs * spec.beta_abs;
  const double cu = (1.0 + 2.0 * nbar) * u;
  const double norm = states::normalization_constant(spec);
  const double scale = variable_scale(form);

  const Jet2 X = kernel_argument(Var::x, n, n, scale);
  const Jet2 Y = kernel_argument(Var::y, n, n, scale);
  const Jet2 Ap = X * (1.0 + cu) + (1.0 - u);
  const Jet2 Am = X * (1.0 - cu) - (1.0 - u);
  const Jet2 Bp = Y * (1.0 + cu) + (1.0 - u);
  const Jet2 Bm = Y * (1.0 - cu) - (1.0 - u);
  const Jet2 inv_Dn = specfun::reciprocal(Ap * Bp - Am * Bm);
  const Jet2 inv_ApBp = specfun::reciprocal(Ap * Bp);
  const Jet2 inv_ApBpDn = inv_ApBp * inv_Dn;
  const Jet2 BpBm = Bp * Bm, ApAm = Ap * Am;

  std::vector<Jet2> U, V;
  std::vector<cdouble> A, B;
  for (int d = 0; d < N; ++d) {
    const double cd = std::cos(kPi * d / N), sd = std::sin(kPi * d / N);
    U.push_back(X * cd + kI * sd);
    V.push_back(Y * cd + kI * sd);
    A.push_back(cdouble(cd * (1.0 - u), -sd * (1.0 + cu)));
    B.push_back(A.back());
  }
  Jet2 J(n, n);
  for (int d1 = 0; d1 < N; ++d1) {
    const Jet2 lin1 = Bp * U[d1] * A[d1];
    const Jet2 quad1 = BpBm * U[d1] * U[d1];
    for (int d2 = 0; d2 < N; ++d2) {
      const Jet2 E = (lin1 + Ap * V[d2] * B[d2]) * inv_ApBp +
                     (quad1 + ApAm * V[d2] * V[d2]) * inv_ApBpDn * (2.0 * (1.0 - u));
      const Jet2 arg = U[d1] * V[d2] * inv_Dn * (8.0 * (1.0 - u) * b2);
      J += specfun::exp(E * (-2.0 * b2)) * specfun::bessel_i0(arg);
    }
  }
  const Jet2 xy = specfun::pow(Jet2::variable(Var::x, n, n) * Jet2::variable(Var::y, n, n), n);
  const Jet2 F = xy * J * inv_Dn;
  const double pref = 2.0 * norm * norm;
  return pref * pref * double(N) * double(N) * real_part(F.coeff(n, n));
}

double phonon_impl(const SuperpositionSpec& spec, double nbar, double u, int m, ClosedForm form) {
  const int n = spec.n, N = spec.components;
  const double b2 = spec.beta_abs * spec.beta_abs;
  const double cu = (1.0 + 2.0 * nbar) * u;
  const double norm = states::normalization_constant(spec);
  const double scale = variable_scale(form);

  const Jet2 X = kernel_argument(Var::x, n, 0, scale);
  const Jet2 Ap = X * (1.0 + cu) + (1.0 - u);
  const Jet2 Am = X * (1.0 - cu) - (1.0 - u);
  const Jet2 inv_Ap = specfun::reciprocal(Ap);

  // Am^j for j = 0 .. m
  std::vector<Jet2> am_pow{Jet2::constant(1.0, n, 0)};
  for (int j = 1; j <= m; ++j) am_pow.push_back(am_pow.back() * Am);
  std::vector<double> coeff(static_cast<std::size_t>(m) + 1);
  for (int k = 0; k <= m; ++k) {
    coeff[k] = ((k % 2 == 0) ? 1.0 : -1.0) * std::exp(std::log(specfun::binomial(m, k)) - specfun::log_factorial(k));
  }

  Jet2 I(n, 0);
  for (int d = 0; d < N; ++d) {
    const double cd = std::cos(kPi * d / N), sd = std::sin(kPi * d / N);
    const Jet2 Ud = X * cd + kI * sd;
    const cdouble Ad(cd * (1.0 - u), -sd * (1.0 + cu));
    const Jet2 w = Ud * Ud * inv_Ap * (4.0 * (1.0 - u) * b2);
    // Am^m L_m(w / Am) expanded so that no power of 1/Am appears
    Jet2 poly(n, 0);
    Jet2 wk = Jet2::constant(1.0, n, 0);
    for (int k = 0; k <= m; ++k) {
      poly += wk * am_pow[m - k] * coeff[k];
      wk = wk * w;
    }
    I += specfun::exp(Ud * inv_Ap * (Ad * (-2.0 * b2))) * poly;
  }
  const Jet2 F = specfun::pow(Jet2::variable(Var::x, n, 0), n) * specfun::pow(inv_Ap, m + 1) * I;
  const double sign = ((n + m) % 2 == 0) ? 1.0 : -1.0;
  return 2.0 * norm * norm * sign * double(N) * real_part(F.coeff(n, 0));
}

// Evaluates f(u); on a singular jet falls back to a symmetric shifted limit
// with one Richardson step and raises `flagged`.
template <class F>
double guarded(F f, double u, double epsilon, bool* flagged) {
  try {
    return f(u);
  } catch (const SingularJetError&) {
    if (flagged) *flagged = true;
    if (u < 2.0 * epsilon) return 2.0 * f(u + epsilon) - f(u + 2.0 * epsilon);
    const double h1 = 0.5 * (f(u + epsilon) + f(u - epsilon));
    const double h2 = 0.5 * (f(u + 2.0 * epsilon) + f(u - 2.0 * epsilon));
    return (4.0 * h1 - h2) / 3.0;
  }
}

}  // namespace

std::string to_string(ClosedForm form) { return form == ClosedForm::corrected ? "corrected" : "as_printed"; }

ClosedForm closed_form_from_string(const std::string& name) {
  if (name == "corrected") return ClosedForm::corrected;
  if (name == "as_printed") return ClosedForm::as_printed;
  throw UsageError("unknown closed form '" + name + "' (expected corrected or as_printed)");
}

double total_purity(const SuperpositionSpec& spec, double nbar, double u, ClosedForm form) {
  check_inputs(spec, nbar, u);
  return mu_impl(spec, nbar, u, form);
}

double diagonal_purity(const SuperpositionSpec& spec, double nbar, double u, ClosedForm form) {
  check_inputs(spec, nbar, u);
  return lambda_impl(spec, nbar, u, form);
}

double phonon_distribution(const SuperpositionSpec& spec, double nbar, double u, int m, ClosedForm form) {
  check_inputs(spec, nbar, u);
  if (m < 0) throw UsageError("phonon index must be >= 0");
  return phonon_impl(spec, nbar, u, m, form);
}

std::vector<double> phonon_distribution(const SuperpositionSpec& spec, double nbar, double u,
                                        std::size_t count, ClosedForm form) {
  check_inputs(spec, nbar, u);
  std::vector<double> out(count);
  for (std::size_t m = 0; m < count; ++m) out[m] = phonon_impl(spec, nbar, u, int(m), form);
  return out;
}

std::size_t default_phonon_count(const SuperpositionSpec& spec, double nbar) {
  // thermal tail (nbar/(1+nbar))^m below 1e-12
  const double ratio = nbar / (1.0 + nbar);
  const std::size_t thermal = ratio > 0.0 ? static_cast<std::size_t>(std::ceil(std::log(1e-12) / std::log(ratio))) : 0;
  return states::default_dim(spec) + thermal;
}

CoherenceReport coherence_at_compact_time(const SuperpositionSpec& spec, double nbar, double u,
                                          const CoherenceOptions& options) {
  check_inputs(spec, nbar, u);
  CoherenceReport rep;
  rep.u = u;
  rep.form = options.form;
  auto mu = [&](double v) { return mu_impl(spec, nbar, v, options.form); };
  auto la = [&](double v) { return lambda_impl(spec, nbar, v, options.form); };
  rep.mu0 = guarded(mu, 0.0, options.epsilon, &rep.flagged);
  rep.lambda0 = guarded(la, 0.0, options.epsilon, &rep.flagged);
  const double gap0 = rep.mu0 - rep.lambda0;
  if (!(gap0 >= 1e-12)) {
    throw DegenerateSuperpositionError("mu(0) - lambda(0) = " + std::to_string(gap0) +
                                       " leaves the coherence measure undefined");
  }
  if (u == 0.0) {
    rep.mu = rep.mu0;
    rep.lambda = rep.lambda0;
  } else {
    rep.mu = guarded(mu, u, options.epsilon, &rep.flagged);
    rep.lambda = guarded(la, u, options.epsilon, &rep.flagged);
  }
  rep.C = (rep.mu - rep.lambda) / gap0;
  if (!options.include_phonon) return rep;
  const std::size_t count = options.phonon_count ? options.phonon_count : default_phonon_count(spec, nbar);
  rep.phonon.resize(count);
  for (std::size_t m = 0; m < count; ++m) {
    rep.phonon[m] = guarded([&](double v) { return phonon_impl(spec, nbar, v, int(m), options.form); }, u,
                            options.epsilon, &rep.flagged);
  }
  return rep;
}

CoherenceReport coherence_measure(const SuperpositionSpec& spec, const phasespace::ReservoirParams& res,
                                  double t, const CoherenceOptions& options) {
  res.validate();
  auto rep = coherence_at_compact_time(spec, res.nbar, res.compact_time(t), options);
  rep.t = t;
  return rep;
}

}  // namespace dncircle::coherence
