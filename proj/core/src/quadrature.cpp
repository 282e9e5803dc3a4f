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

#include "dncircle/quadrature.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "dncircle/errors.hpp"

namespace dncircle::oracle {

GaussLegendre gauss_legendre(std::size_t n) {
  if (n == 0) throw UsageError("Gauss-Legendre rule needs at least one node");
  GaussLegendre g;
  g.nodes.assign(n, 0.0);
  g.weights.assign(n, 0.0);
  if (n == 1) {
    g.weights[0] = 2.0;
    return g;
  }
  for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
    // Tricomi initial guess, then Newton on P_n
    double x = std::cos(std::numbers::pi * (double(i) + 0.75) / (double(n) + 0.5));
    double dp = 1.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * double(k) - 1.0) * x * p1 - (double(k) - 1.0) * p0) / double(k);
        p0 = p1;
        p1 = p2;
      }
      dp = double(n) * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::fabs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    g.nodes[i] = -x;
    g.nodes[n - 1 - i] = x;
    g.weights[i] = w;
    g.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) g.nodes[n / 2] = 0.0;
  return g;
}

GaussLegendre gauss_legendre(std::size_t n, double lo, double hi) {
  auto g = gauss_legendre(n);
  const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
  for (std::size_t i = 0; i < n; ++i) {
    g.nodes[i] = mid + half * g.nodes[i];
    g.weights[i] *= half;
  }
  return g;
}

double quad_fixed(const QuadratureRule& rule, const Integrand& f) {
  const std::size_t dims = rule.box.size();
  if (dims == 0) throw UsageError("quadrature box has no axes");
  std::vector<GaussLegendre> axes;
  axes.reserve(dims);
  for (const auto& iv : rule.box) {
    if (!(iv.hi > iv.lo)) throw UsageError("quadrature interval must satisfy lo < hi");
    axes.push_back(gauss_legendre(rule.nodes_per_axis, iv.lo, iv.hi));
  }
  const std::size_t m = rule.nodes_per_axis;
  std::vector<std::size_t> idx(dims, 0);
  std::vector<double> x(dims);
  double sum = 0.0;
  while (true) {
    double w = 1.0;
    for (std::size_t d = 0; d < dims; ++d) {
      x[d] = axes[d].nodes[idx[d]];
      w *= axes[d].weights[idx[d]];
    }
    sum += w * f(x);
    std::size_t d = 0;
    while (d < dims && ++idx[d] == m) idx[d++] = 0;
    if (d == dims) break;
  }
  return sum;
}

QuadResult quad_nd(QuadratureRule rule, const Integrand& f, const QuadOptions& options) {
  const std::size_t dims = rule.box.size();
  auto cost = [dims](std::size_t m) {
    double c = 1.0;
    for (std::size_t d = 0; d < dims; ++d) c *= double(m);
    return c;
  };
  QuadResult res;
  if (cost(rule.nodes_per_axis) > double(options.max_evaluations)) {
    throw BudgetExhaustedError("initial quadrature rule exceeds the evaluation budget", 0.0, 0.0);
  }
  res.value = quad_fixed(rule, f);
  res.evaluations = static_cast<std::size_t>(cost(rule.nodes_per_axis));
  res.nodes_per_axis = rule.nodes_per_axis;
  res.last_change = std::numeric_limits<double>::infinity();
  while (true) {
    const std::size_t next = rule.nodes_per_axis * 2;
    if (double(res.evaluations) + cost(next) > double(options.max_evaluations)) {
      throw BudgetExhaustedError("quadrature budget exhausted at " + std::to_string(rule.nodes_per_axis) +
                                     " nodes per axis",
                                 res.value, res.last_change);
    }
    rule.nodes_per_axis = next;
    const double v = quad_fixed(rule, f);
    res.evaluations += static_cast<std::size_t>(cost(next));
    res.last_change = std::fabs(v - res.value);
    res.value = v;
    res.nodes_per_axis = next;
    if (res.last_change < options.tolerance) return res;
  }
}

}  // namespace dncircle::oracle
