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

#include "dncircle/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dncircle/errors.hpp"
#include "dncircle/specfun.hpp"

namespace dncircle::protocol {

namespace {

constexpr double kPi = std::numbers::pi;

void check_indices(int n, int ell) {
  if (n < 0) throw UsageError("excitation degree n must be >= 0");
  if (ell < 0 || ell > 20) throw UsageError("cycle count must lie in [0, 20]");
}

double sum_by_magnitude(std::vector<double> terms) {
  std::sort(terms.begin(), terms.end(), [](double a, double b) { return std::fabs(a) < std::fabs(b); });
  double s = 0.0;
  for (double t : terms) s += t;
  return s;
}

}  // namespace

void ProtocolParams::validate() const {
  if (!(Lambda > 0.0)) throw UsageError("Lambda must be > 0");
  if (!(eta > 0.0)) throw UsageError("eta must be > 0");
  if (!(lambda_c > 0.0)) throw UsageError("lambda_c must be > 0");
  if (!(tau_d >= 0.0)) throw UsageError("tau_d must be >= 0");
  if (!std::isfinite(phi_b) || !std::isfinite(phi_r)) throw UsageError("laser phases must be finite");
}

double line_probability(int n, double beta_abs) {
  check_indices(n, 0);
  const double b2 = beta_abs * beta_abs;
  return 0.5 * (1.0 + std::exp(-2.0 * b2) * specfun::laguerre(n, 0.0, 4.0 * b2));
}

double circle_probability(int n, int ell, double beta_abs) {
  check_indices(n, ell);
  const int N = 1 << (ell + 1);
  const double b2 = beta_abs * beta_abs;
  std::vector<double> terms;
  terms.reserve(static_cast<std::size_t>(N));
  terms.push_back(std::ldexp(1.0, -(ell + 1)));
  const double scale = std::ldexp(1.0, -(2 * ell + 1));
  for (int r = 1; r < N; ++r) {
    const double s = std::sin(kPi * r / N);
    const double s2 = s * s;
    terms.push_back(scale * r * std::exp(-2.0 * b2 * s2) * std::cos(b2 * std::sin(2.0 * kPi * r / N)) *
                    specfun::laguerre(n, 0.0, 4.0 * b2 * s2));
  }
  double magnitude = 0.0;
  for (double t : terms) magnitude += std::fabs(t);
  const double p = sum_by_magnitude(std::move(terms));
  if (p > 1e-3 * magnitude) return p;
  // Near a zero of L_n the sum cancels; |N|^2 P = 2^{-2(ell+1)} gives P from the positive series.
  return states::superposition_norm_squared(SuperpositionSpec::circle(n, N, beta_abs)) * std::ldexp(1.0, -2 * (ell + 1));
}

VibronicState step2_state(int n, cdouble beta, double varphi, std::size_t dim) {
  if (dim <= static_cast<std::size_t>(std::max(n, 0))) throw UsageError("Fock dimension must exceed n");
  const auto plus = states::displaced_number_state(n, beta, dim);
  const auto minus = states::displaced_number_state(n, -beta, dim);
  const double loss = std::max(plus.truncation_loss, minus.truncation_loss);
  if (loss > states::kDefaultTruncationThreshold) {
    SuperpositionSpec probe = SuperpositionSpec::circle(n, 2, std::abs(beta));
    throw TruncationError("step-two state truncated at dim " + std::to_string(dim),
                          std::max(dim + 1, states::default_dim(probe)));
  }
  VibronicState out;
  out.up.amps.resize(dim);
  out.down.amps.resize(dim);
  const cdouble down_phase = -0.5 * std::polar(1.0, varphi);
  for (std::size_t m = 0; m < dim; ++m) {
    out.up.amps[m] = 0.5 * (plus.amps[m] + minus.amps[m]);
    out.down.amps[m] = down_phase * (plus.amps[m] - minus.amps[m]);
  }
  out.up.truncation_loss = loss;
  out.down.truncation_loss = loss;
  return out;
}

cdouble step2_displacement(const ProtocolParams& params, double t) {
  return cdouble(0.0, params.Omega() * t) * std::polar(1.0, -params.theta());
}

double SequencePlan::kappa() const { return std::sqrt(kappa_sq); }

SequencePlan plan_sequence(const ProtocolParams& params, int n, int ell, cdouble beta) {
  params.validate();
  check_indices(n, ell);
  SequencePlan plan;
  plan.ell = ell;
  plan.n = n;
  plan.beta = beta;
  const double denom = double(n) + std::ldexp(1.0, ell + 2);
  plan.kappa_sq = 1.0 / denom;
  const double lambda_bar = plan.kappa_sq * params.Lambda;
  for (int k = 1; k <= ell; ++k) {
    plan.pulse_durations.push_back(kPi / (std::ldexp(1.0, k + 1) * lambda_bar));
  }
  for (double t : plan.pulse_durations) plan.T_sum += t;
  plan.T = (kPi / (2.0 * params.Lambda)) * denom * (1.0 - std::ldexp(1.0, -ell));
  plan.tau = std::abs(beta) / params.Omega();
  plan.tau_t = plan.tau + params.tau_d;
  plan.T_t = plan.T + ell * params.tau_d + plan.tau_t;
  return plan;
}

double carrier_validity_ratio(const FockVector& state, double kappa) {
  double n1 = 0.0, n2 = 0.0, total = 0.0;
  for (std::size_t m = 0; m < state.dim(); ++m) {
    const double p = std::norm(state.amps[m]);
    const double md = double(m);
    total += p;
    n1 += md * p;
    n2 += md * (md - 1.0) * p;
  }
  if (!(n1 > 1e-14 * total)) throw UndefinedRatioError("<a+ a> vanishes; carrier validity ratio undefined");
  return 0.25 * kappa * kappa * n2 / n1;
}

double carrier_validity_ratio(const SuperpositionSpec& spec, double kappa) {
  return carrier_validity_ratio(states::build_fock_vector(spec), kappa);
}

SequenceResult run_sequence_oracle(const ProtocolParams& params, int n, int ell, cdouble beta,
                                   std::size_t dim) {
  const auto plan = plan_sequence(params, n, ell, beta);
  const int N = 1 << (ell + 1);

  SequenceResult res;
  res.target = SuperpositionSpec::circle(n, N, std::abs(beta));
  res.target.theta1 = std::arg(beta) + kPi / N;
  const auto target = states::build_fock_vector(res.target, dim);

  const auto vib = step2_state(n, beta, params.varphi(), dim);
  std::vector<cdouble> psi = vib.up.amps;
  res.line_probability = vib.up.squared_norm();
  double norm = std::sqrt(res.line_probability);
  for (auto& a : psi) a /= norm;

  const double lambda_bar = plan.kappa_sq * params.Lambda;
  res.cumulative_probability = 1.0;
  for (double tk : plan.pulse_durations) {
    double p = 0.0;
    for (std::size_t m = 0; m < dim; ++m) {
      psi[m] *= std::cos(tk * (params.Lambda - lambda_bar * double(m)));
      p += std::norm(psi[m]);
    }
    res.cycle_probabilities.push_back(p);
    res.cumulative_probability *= p;
    norm = std::sqrt(p);
    for (auto& a : psi) a /= norm;
  }

  res.final_state.amps = std::move(psi);
  res.final_state.truncation_loss = target.truncation_loss;
  res.fidelity = std::norm(states::inner_product(target, res.final_state));
  if (!(res.fidelity >= kSequenceFidelityThreshold)) {
    throw ProtocolMismatchError("sequence oracle fidelity " + std::to_string(res.fidelity) +
                                    " below threshold",
                                res.fidelity);
  }
  return res;
}

}  // namespace dncircle::protocol
