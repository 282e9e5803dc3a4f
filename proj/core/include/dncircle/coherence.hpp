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

#include <cstddef>
#include <string>
#include <vector>

#include "dncircle/phasespace.hpp"
#include "dncircle/states.hpp"

namespace dncircle::coherence {

using states::SuperpositionSpec;

/// Which generating-function closed form to differentiate.
///
/// `corrected` evaluates the generating kernels at X = 2x - 1, Y = 2y - 1
/// (keeping the (xy)^n prefactor in x, y); it reproduces Tr rho^2, sum P_m^2
/// and P_m of the damped state exactly. `as_printed` evaluates them at X = x,
/// Y = y, which agrees for n = 0 and differs for n >= 1.
enum class ClosedForm { corrected, as_printed };

std::string to_string(ClosedForm form);
ClosedForm closed_form_from_string(const std::string& name);

/// Tr rho^2 at compact time u (as_printed: the same expression with X = x).
double total_purity(const SuperpositionSpec& spec, double nbar, double u,
                    ClosedForm form = ClosedForm::corrected);

/// sum_m P_m^2 at compact time u.
double diagonal_purity(const SuperpositionSpec& spec, double nbar, double u,
                       ClosedForm form = ClosedForm::corrected);

/// Fock population P_m at compact time u.
double phonon_distribution(const SuperpositionSpec& spec, double nbar, double u, int m,
                           ClosedForm form = ClosedForm::corrected);

/// Populations P_0 .. P_{count-1}.
std::vector<double> phonon_distribution(const SuperpositionSpec& spec, double nbar, double u,
                                        std::size_t count, ClosedForm form = ClosedForm::corrected);

/// Population count whose omitted tail is negligible for the state and bath.
std::size_t default_phonon_count(const SuperpositionSpec& spec, double nbar);

struct CoherenceOptions {
  ClosedForm form = ClosedForm::corrected;
  std::size_t phonon_count = 0;  // 0 selects default_phonon_count
  double epsilon = 1e-4;         // shift used when a jet reciprocal is singular
  bool include_phonon = true;    // false leaves CoherenceReport::phonon empty
};

struct CoherenceReport {
  double u = 0.0;
  double t = 0.0;
  double mu = 0.0;
  double lambda = 0.0;
  double mu0 = 0.0;
  double lambda0 = 0.0;
  double C = 1.0;
  std::vector<double> phonon;
  bool flagged = false;  // true when the shifted-limit fallback was used
  ClosedForm form = ClosedForm::corrected;
};

/// C(u) = (mu(u) - lambda(u)) / (mu(0) - lambda(0)). Throws
/// DegenerateSuperpositionError when mu(0) - lambda(0) < 1e-12.
CoherenceReport coherence_measure(const SuperpositionSpec& spec, const phasespace::ReservoirParams& res,
                                  double t, const CoherenceOptions& options = {});
CoherenceReport coherence_at_compact_time(const SuperpositionSpec& spec, double nbar, double u,
                                          const CoherenceOptions& options = {});

}  // namespace dncircle::coherence
