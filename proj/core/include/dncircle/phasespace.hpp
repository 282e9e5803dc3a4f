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
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "dncircle/states.hpp"

namespace dncircle::phasespace {

using states::SuperpositionSpec;

/// Thermal damping channel.
struct ReservoirParams {
  double omega0 = 1.0;
  double gamma = 1.0;
  double nbar = 0.0;

  void validate() const;
  /// Compact time u = 1 - exp(-2 gamma t).
  double compact_time(double t) const;
  /// Inverse of compact_time for u in [0, 1).
  double time_for(double u) const;
};

enum class Part { full, diagonal, nondiagonal };

/// Wigner function of the superposition, normalized to unit integral over
/// dp dq, with z = q + i p.
double wigner0(const SuperpositionSpec& spec, double p, double q);
double wigner0_part(const SuperpositionSpec& spec, double p, double q, Part part);

/// Gaussian transition kernel of the damped oscillator. Throws DeltaLimitError
/// for t == 0.
double fp_kernel(const ReservoirParams& res, double t, double p, double q, double p_prime,
                 double q_prime);

/// Closed-form Wigner function after damping for time t.
double wigner_t(const SuperpositionSpec& spec, const ReservoirParams& res, double t, double p, double q);
double wigner_t_part(const SuperpositionSpec& spec, const ReservoirParams& res, double t, double p,
                     double q, Part part);

/// Same closed form parametrized directly by compact time u in [0, 1) and the
/// free rotation angle omega0 t.
double wigner_compact(const SuperpositionSpec& spec, double nbar, double u, double angle, double p,
                      double q, Part part = Part::full);

/// |1 - 2(nbar+1)u| below which the expanded polynomial form is used.
inline constexpr double kSingularSwitch = 1e-3;

/// Uniform (p, q) grid, row-major with p as the row index.
struct PhaseGrid {
  double p_min = -6.5, p_max = 6.5;
  double q_min = -6.5, q_max = 6.5;
  std::size_t np = 261, nq = 261;
  std::vector<double> values;

  double p(std::size_t i) const;
  double q(std::size_t j) const;
  double dp() const { return (p_max - p_min) / double(np - 1); }
  double dq() const { return (q_max - q_min) / double(nq - 1); }
  double at(std::size_t i, std::size_t j) const { return values[i * nq + j]; }
  double max_abs() const;
  void validate_bounds() const;
};

/// Fills `bounds.values` with f(p_i, q_j). Rows are split across `threads`
/// workers (0 = hardware concurrency); each cell is computed independently so
/// the output does not depend on the thread count.
PhaseGrid grid_eval(const std::function<double(double, double)>& f, PhaseGrid bounds,
                    unsigned threads = 0);

/// Composite trapezoid rule over the grid.
double trapezoid_integral(const PhaseGrid& grid);

/// CSV layout: header `p_min,p_max,q_min,q_max,np,nq`, one row with those
/// values, then np rows of nq values each (%.17g).
void write_csv(std::ostream& out, const PhaseGrid& grid);
PhaseGrid read_csv(std::istream& in);

}  // namespace dncircle::phasespace
