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

#include "dncircle/phasespace.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <exception>
#include <thread>

#include "dncircle/errors.hpp"
#include "dncircle/specfun.hpp"

namespace dncircle::phasespace {

namespace {

using cdouble = std::complex<double>;
constexpr double kPi = std::numbers::pi;

bool wants(Part part, bool diagonal) {
  return part == Part::full || (diagonal ? part == Part::diagonal : part == Part::nondiagonal);
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

void ReservoirParams::validate() const {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw UsageError("gamma must be finite and > 0");
  if (!(nbar >= 0.0) || !std::isfinite(nbar)) throw UsageError("nbar must be finite and >= 0");
  if (!std::isfinite(omega0)) throw UsageError("omega0 must be finite");
}

double ReservoirParams::compact_time(double t) const {
  if (t < 0.0) throw UsageError("time must be >= 0");
  return -std::expm1(-2.0 * gamma * t);
}

double ReservoirParams::time_for(double u) const {
  if (!(u >= 0.0 && u < 1.0)) throw UsageError("compact time must lie in [0, 1)");
  return -0.5 * std::log1p(-u) / gamma;
}

double wigner0_part(const SuperpositionSpec& spec, double p, double q, Part part) {
  const double norm = states::normalization_constant(spec);
  const int N = spec.components;
  const double b2 = spec.beta_abs * spec.beta_abs;
  const cdouble z(q, p);
  const auto beta = spec.displacements();
  double sum = 0.0;
  for (int r = 0; r < N; ++r) {
    for (int s = 0; s <= r; ++s) {
      if (!wants(part, r == s)) continue;
      const cdouble R = (z - std::numbers::sqrt2 * beta[r]) * std::conj(z - std::numbers::sqrt2 * beta[s]) +
                        b2 - beta[r] * std::conj(beta[s]);
      if (r == s) {
        sum += std::exp(-R.real()) * specfun::laguerre(spec.n, 0.0, 2.0 * R.real());
      } else {
        sum += 2.0 * std::exp(-R.real()) * std::cos(R.imag()) * specfun::laguerre(spec.n, 0.0, 2.0 * R.real());
      }
    }
  }
  const double sign = (spec.n % 2 == 0) ? 1.0 : -1.0;
  return sign / kPi * norm * norm * sum;
}

double wigner0(const SuperpositionSpec& spec, double p, double q) {
  return wigner0_part(spec, p, q, Part::full);
}

double fp_kernel(const ReservoirParams& res, double t, double p, double q, double p_prime,
                 double q_prime) {
  res.validate();
  if (t == 0.0) throw DeltaLimitError("kernel is a delta function at t = 0; use the initial Wigner function");
  if (t < 0.0) throw UsageError("time must be >= 0");
  const double u = res.compact_time(t);
  const double width = (1.0 + 2.0 * res.nbar) * u;
  const double decay = std::exp(-res.gamma * t);
  const double c = std::cos(res.omega0 * t), s = std::sin(res.omega0 * t);
  const double pt = p * c + q * s;
  const double qt = q * c - p * s;
  const double dp = pt - decay * p_prime;
  const double dq = qt - decay * q_prime;
  return std::exp(-(dp * dp + dq * dq) / width) / (kPi * width);
}

double wigner_compact(const SuperpositionSpec& spec, double nbar, double u, double angle, double p,
                      double q, Part part) {
  if (!(u >= 0.0 && u < 1.0)) throw UsageError("compact time must lie in [0, 1)");
  if (!(nbar >= 0.0)) throw UsageError("nbar must be >= 0");
  const double norm = states::normalization_constant(spec);
  const int N = spec.components;
  const int n = spec.n;
  const double b2 = spec.beta_abs * spec.beta_abs;
  const double cu = (1.0 + 2.0 * nbar) * u;
  const double d = 1.0 + 2.0 * nbar * u;
  const double e = 1.0 - 2.0 * (nbar + 1.0) * u;
  const double shrink = std::sqrt(2.0 * (1.0 - u));
  const double pt = p * std::cos(angle) + q * std::sin(angle);
  const double qt = q * std::cos(angle) - p * std::sin(angle);
  const cdouble z(qt, pt);
  const auto beta = spec.displacements();
  const bool expanded = std::fabs(e) <= kSingularSwitch;
  const auto coeffs = specfun::laguerre_coefficients(n, 0.0);

  double sum = 0.0;
  for (int r = 0; r < N; ++r) {
    for (int s = 0; s <= r; ++s) {
      if (!wants(part, r == s)) continue;
      const cdouble R = (z - shrink * beta[r]) * std::conj(z - shrink * beta[s]) +
                        (b2 - beta[r] * std::conj(beta[s])) * (1.0 - u);
      const double k = kPi * (r - s) / N;
      const double sk = std::sin(k);
      const double s2k = std::sin(2.0 * k);
      const cdouble F(R.real() / d + 2.0 * cu * b2 * sk * sk / d, -R.imag() / d + cu * b2 * s2k / d);
      const cdouble Gnum((1.0 - u) * R.real() - 2.0 * cu * cu * b2 * sk * sk,
                         cu * R.imag() + (1.0 - u) * cu * b2 * s2k);
      cdouble factor;
      if (!expanded) {
        factor = std::pow(e / d, n) * specfun::laguerre(n, 0.0, 2.0 * Gnum / (d * e));
      } else {
        // (e/d)^n L_n(2 Gnum / (d e)) with the poles in e cancelled termwise
        factor = 0.0;
        for (int j = 0; j <= n; ++j) {
          factor += coeffs[j] * std::pow(2.0 * Gnum, j) * std::pow(e, n - j) / std::pow(d, n + j);
        }
      }
      const double term = (std::exp(-F) * factor).real();
      sum += (r == s) ? term : 2.0 * term;
    }
  }
  const double sign = (n % 2 == 0) ? 1.0 : -1.0;
  return sign / kPi * norm * norm / d * sum;
}

double wigner_t_part(const SuperpositionSpec& spec, const ReservoirParams& res, double t, double p,
                     double q, Part part) {
  res.validate();
  if (t == 0.0) return wigner0_part(spec, p, q, part);
  return wigner_compact(spec, res.nbar, res.compact_time(t), res.omega0 * t, p, q, part);
}

double wigner_t(const SuperpositionSpec& spec, const ReservoirParams& res, double t, double p, double q) {
  return wigner_t_part(spec, res, t, p, q, Part::full);
}

double PhaseGrid::p(std::size_t i) const { return p_min + dp() * double(i); }
double PhaseGrid::q(std::size_t j) const { return q_min + dq() * double(j); }

double PhaseGrid::max_abs() const {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::fabs(v));
  return m;
}

void PhaseGrid::validate_bounds() const {
  if (np < 2 || nq < 2) throw UsageError("grid needs at least 2 points per axis");
  if (!(p_max > p_min) || !(q_max > q_min)) throw UsageError("grid bounds must satisfy min < max");
}

PhaseGrid grid_eval(const std::function<double(double, double)>& f, PhaseGrid bounds, unsigned threads) {
  bounds.validate_bounds();
  bounds.values.assign(bounds.np * bounds.nq, 0.0);
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(bounds.np));
  auto fill_rows = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const double p = bounds.p(i);
      for (std::size_t j = 0; j < bounds.nq; ++j) bounds.values[i * bounds.nq + j] = f(p, bounds.q(j));
    }
  };
  if (threads <= 1) {
    fill_rows(0, bounds.np);
    return bounds;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(threads);
  const std::size_t chunk = (bounds.np + threads - 1) / threads;
  for (unsigned w = 0; w < threads; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(bounds.np, begin + chunk);
    pool.emplace_back([&, w, begin, end] {
      try {
        fill_rows(begin, end);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& err : errors) {
    if (err) std::rethrow_exception(err);
  }
  return bounds;
}

double trapezoid_integral(const PhaseGrid& grid) {
  grid.validate_bounds();
  double sum = 0.0;
  for (std::size_t i = 0; i < grid.np; ++i) {
    const double wi = (i == 0 || i + 1 == grid.np) ? 0.5 : 1.0;
    for (std::size_t j = 0; j < grid.nq; ++j) {
      const double wj = (j == 0 || j + 1 == grid.nq) ? 0.5 : 1.0;
      sum += wi * wj * grid.at(i, j);
    }
  }
  return sum * grid.dp() * grid.dq();
}

void write_csv(std::ostream& out, const PhaseGrid& grid) {
  out << "p_min,p_max,q_min,q_max,np,nq\n";
  out << fmt(grid.p_min) << ',' << fmt(grid.p_max) << ',' << fmt(grid.q_min) << ',' << fmt(grid.q_max)
      << ',' << grid.np << ',' << grid.nq << '\n';
  for (std::size_t i = 0; i < grid.np; ++i) {
    for (std::size_t j = 0; j < grid.nq; ++j) {
      if (j) out << ',';
      out << fmt(grid.at(i, j));
    }
    out << '\n';
  }
}

PhaseGrid read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || split_csv_line(line).size() != 6) throw UsageError("grid CSV: bad header");
  if (!std::getline(in, line)) throw UsageError("grid CSV: missing bounds row");
  const auto b = split_csv_line(line);
  if (b.size() != 6) throw UsageError("grid CSV: bounds row needs 6 fields");
  PhaseGrid g;
  try {
    g.p_min = std::stod(b[0]);
    g.p_max = std::stod(b[1]);
    g.q_min = std::stod(b[2]);
    g.q_max = std::stod(b[3]);
    g.np = std::stoul(b[4]);
    g.nq = std::stoul(b[5]);
  } catch (const std::exception&) {
    throw UsageError("grid CSV: unparsable bounds row");
  }
  g.validate_bounds();
  g.values.reserve(g.np * g.nq);
  for (std::size_t i = 0; i < g.np; ++i) {
    if (!std::getline(in, line)) throw UsageError("grid CSV: missing row " + std::to_string(i));
    const auto row = split_csv_line(line);
    if (row.size() != g.nq) throw UsageError("grid CSV: row " + std::to_string(i) + " has wrong width");
    for (const auto& cell : row) g.values.push_back(std::stod(cell));
  }
  return g;
}

}  // namespace dncircle::phasespace
