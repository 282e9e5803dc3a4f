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

#include "dncircle/states.hpp"

namespace dncircle::protocol {

using cdouble = std::complex<double>;
using states::FockVector;
using states::SuperpositionSpec;

/// Laser and trap constants. Times are in microseconds, rates in rad/us.
struct ProtocolParams {
  double Lambda = 2.0 * std::numbers::pi;    // carrier Rabi frequency
  double eta = 0.1;                          // sideband Lamb-Dicke parameter
  double lambda_c = 2.0 * std::numbers::pi;  // coupling constant
  double tau_d = 200.0;                      // detection time
  double phi_b = 0.0;                        // blue laser phase
  double phi_r = 0.0;                        // red laser phase

  double Omega() const { return eta * lambda_c; }
  double theta() const { return 0.5 * (phi_b - phi_r); }
  double varphi() const { return 0.5 * (phi_b + phi_r); }

  /// Throws UsageError unless Lambda, eta, lambda_c > 0 and tau_d >= 0.
  void validate() const;
};

/// No-fluorescence probability of the two-component line step,
/// (1 + e^{-2|b|^2} L_n(4|b|^2)) / 2.
double line_probability(int n, double beta_abs);

/// No-fluorescence probability after `ell` carrier cycles, counted from the
/// initial Fock state (line step included). ell = 0 reproduces line_probability.
double circle_probability(int n, int ell, double beta_abs);

/// Ion state after the bichromatic step: one vibrational vector per level.
struct VibronicState {
  FockVector up;
  FockVector down;
  double squared_norm() const { return up.squared_norm() + down.squared_norm(); }
};

/// (|n,b> + |n,-b>)/2 on |up> and -e^{i varphi}(|n,b> - |n,-b>)/2 on |down>.
VibronicState step2_state(int n, cdouble beta, double varphi, std::size_t dim);

/// Displacement reached after a bichromatic pulse of length t: i Omega t e^{-i theta}.
cdouble step2_displacement(const ProtocolParams& params, double t);

struct SequencePlan {
  int ell = 0;
  int n = 0;
  cdouble beta{0.0, 0.0};
  double kappa_sq = 0.0;
  std::vector<double> pulse_durations;  // t_1 .. t_ell
  double T = 0.0;                       // closed form
  double T_sum = 0.0;                   // sum of pulse_durations
  double tau = 0.0;                     // bichromatic pulse time |beta| / Omega
  double tau_t = 0.0;                   // tau + tau_d
  double T_t = 0.0;                     // T + ell tau_d + tau_t

  double kappa() const;
};

/// Pulse schedule for `ell` >= 0 cycles with kappa^2 = 1 / (n + 2^(ell+2)).
SequencePlan plan_sequence(const ProtocolParams& params, int n, int ell, cdouble beta);

/// (kappa^2 / 4) <a+^2 a^2> / <a+ a>. Throws UndefinedRatioError on the vacuum.
double carrier_validity_ratio(const FockVector& state, double kappa);
double carrier_validity_ratio(const SuperpositionSpec& spec, double kappa);

struct SequenceResult {
  FockVector final_state;
  SuperpositionSpec target;
  double fidelity = 0.0;                    // |<target|final>|^2
  double line_probability = 0.0;            // projection after the bichromatic step
  std::vector<double> cycle_probabilities;  // one per carrier cycle
  double cumulative_probability = 0.0;      // product of cycle_probabilities
};

/// Minimum fidelity accepted by run_sequence_oracle.
inline constexpr double kSequenceFidelityThreshold = 1.0 - 1e-8;

/// State-vector simulation of the full sequence. Carrier cycles act diagonally
/// in the Fock basis: <up|U|up> = cos(t_k (Lambda - kappa^2 Lambda m)). Throws
/// TruncationError when `dim` is too small and ProtocolMismatchError if the
/// final state misses the circle target.
SequenceResult run_sequence_oracle(const ProtocolParams& params, int n, int ell, cdouble beta,
                                   std::size_t dim);

}  // namespace dncircle::protocol
