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
#include <span>
#include <vector>

namespace dncircle::oracle {

/// n-point Gauss-Legendre rule on [-1, 1]; exact for polynomials of degree 2n-1.
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;
};

GaussLegendre gauss_legendre(std::size_t n);

/// Nodes and weights mapped onto [lo, hi].
GaussLegendre gauss_legendre(std::size_t n, double lo, double hi);

struct Interval {
  double lo = -1.0;
  double hi = 1.0;
};

/// Tensor-product Gauss-Legendre rule over a box.
struct QuadratureRule {
  std::vector<Interval> box;
  std::size_t nodes_per_axis = 16;
};

struct QuadOptions {
  double tolerance = 1e-10;                  // absolute change between refinements
  std::size_t max_evaluations = 200'000'000; // budget across all refinements
};

struct QuadResult {
  double value = 0.0;
  double last_change = 0.0;
  std::size_t nodes_per_axis = 0;
  std::size_t evaluations = 0;
};

using Integrand = std::function<double(std::span<const double>)>;

/// Single tensor-product evaluation at rule.nodes_per_axis.
double quad_fixed(const QuadratureRule& rule, const Integrand& f);

/// Doubles nodes per axis until successive values change by less than
/// options.tolerance. Throws BudgetExhaustedError when the next refinement
/// would exceed options.max_evaluations.
QuadResult quad_nd(QuadratureRule rule, const Integrand& f, const QuadOptions& options = {});

}  // namespace dncircle::oracle
