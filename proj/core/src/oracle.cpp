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

#include "dncircle/oracle.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <exception>
#include <numbers>
#include <string>
#include <thread>

#include "dncircle/errors.hpp"
#include "dncircle/specfun.hpp"

namespace dncircle::oracle {

namespace {

constexpr double kPi = std::numbers::pi;

unsigned worker_count(std::size_t work_items) {
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::min<std::size_t>(hw, std::max<std::size_t>(work_items, 1)));
}

// Runs body(i) for i in [0, count) on a fixed row partition.
template <class Body>
void parallel_rows(std::size_t count, Body body) {
  const unsigned workers = worker_count(count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < count; i += workers) body(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

struct MasterEquation {
  Eigen::MatrixXcd diag;
  Eigen::MatrixXcd up;    // couples rho(m+1, k+1) into (m, k)
  Eigen::MatrixXcd down;  // couples rho(m-1, k-1) into (m, k)
  double stiffness = 0.0;

  MasterEquation(std::size_t dim, const phasespace::ReservoirParams& res) {
    const Eigen::Index d = static_cast<Eigen::Index>(dim);
    diag.resize(d, d);
    up.resize(d - 1, d - 1);
    down.resize(d - 1, d - 1);
    const double g = res.gamma, nb = res.nbar;
    for (Eigen::Index m = 0; m < d; ++m) {
      for (Eigen::Index k = 0; k < d; ++k) {
        const double mk = double(m + k);
        diag(m, k) = cdouble(-g * (nb + 1.0) * mk - g * nb * (mk + 2.0), -res.omega0 * double(m - k));
        stiffness = std::max(stiffness, std::abs(diag(m, k)));
      }
    }
    for (Eigen::Index m = 0; m + 1 < d; ++m) {
      for (Eigen::Index k = 0; k + 1 < d; ++k) {
        up(m, k) = 2.0 * g * (nb + 1.0) * std::sqrt(double(m + 1) * double(k + 1));
        down(m, k) = 2.0 * g * nb * std::sqrt(double(m + 1) * double(k + 1));
      }
    }
    stiffness += up.size() ? up.cwiseAbs().maxCoeff() + down.cwiseAbs().maxCoeff() : 0.0;
  }

  void rhs(const Eigen::MatrixXcd& rho, Eigen::MatrixXcd& out) const {
    const Eigen::Index d = rho.rows();
    out = diag.cwiseProduct(rho);
    if (d > 1) {
      out.topLeftCorner(d - 1, d - 1) += up.cwiseProduct(rho.bottomRightCorner(d - 1, d - 1));
      out.bottomRightCorner(d - 1, d - 1) += down.cwiseProduct(rho.topLeftCorner(d - 1, d - 1));
    }
  }

  Eigen::MatrixXcd integrate(const Eigen::MatrixXcd& rho0, double t, std::size_t steps) const {
    const double h = t / double(steps);
    Eigen::MatrixXcd rho = rho0, k1, k2, k3, k4;
    for (std::size_t s = 0; s < steps; ++s) {
      rhs(rho, k1);
      rhs(rho + 0.5 * h * k1, k2);
      rhs(rho + 0.5 * h * k2, k3);
      rhs(rho + h * k3, k4);
      rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return rho;
  }
};

// (-1)^k sqrt(k!/(k+d)!) (2|alpha|)^d e^{-2|alpha|^2} L_k^(d)(4|alpha|^2), k = 0 .. count-1
std::vector<double> wigner_kernel_column(int d, std::size_t count, double abs_alpha) {
  std::vector<double> out(count, 0.0);
  const double x = 4.0 * abs_alpha * abs_alpha;
  if (abs_alpha == 0.0 && d > 0) return out;
  const double log_base = d > 0 ? double(d) * std::log(2.0 * abs_alpha) : 0.0;
  double prev = 0.0, cur = 1.0;  // L_{k-1}, L_k
  for (std::size_t k = 0; k < count; ++k) {
    const double log_pref = 0.5 * (specfun::log_factorial(int(k)) - specfun::log_factorial(int(k) + d)) +
                            log_base - 0.5 * x;
    out[k] = ((k % 2 == 0) ? 1.0 : -1.0) * std::exp(log_pref) * cur;
    const double kk = double(k);
    const double next = ((2.0 * kk + 1.0 + d - x) * cur - (kk + d) * prev) / (kk + 1.0);
    prev = cur;
    cur = next;
  }
  return out;
}

}  // namespace

FockDensity FockDensity::from_vector(const states::FockVector& v) {
  Eigen::VectorXcd psi(static_cast<Eigen::Index>(v.dim()));
  for (std::size_t m = 0; m < v.dim(); ++m) psi(static_cast<Eigen::Index>(m)) = v.amps[m];
  FockDensity out;
  out.rho = psi * psi.adjoint();
  return out;
}

FockDensity FockDensity::thermal(double nbar, std::size_t dim) {
  if (!(nbar >= 0.0)) throw UsageError("nbar must be >= 0");
  FockDensity out;
  const Eigen::Index d = static_cast<Eigen::Index>(dim);
  out.rho = Eigen::MatrixXcd::Zero(d, d);
  const double ratio = nbar / (1.0 + nbar);
  double p = 1.0 / (1.0 + nbar);
  for (Eigen::Index m = 0; m < d; ++m) {
    out.rho(m, m) = p;
    p *= ratio;
  }
  return out;
}

double FockDensity::trace_defect() const { return std::abs(rho.trace() - cdouble(1.0)); }

double FockDensity::hermiticity_defect() const {
  return rho.size() ? (rho - rho.adjoint()).cwiseAbs().maxCoeff() : 0.0;
}

double FockDensity::min_eigenvalue() const {
  const Eigen::MatrixXcd h = 0.5 * (rho + rho.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

void FockDensity::validate(double hermiticity_tol, double trace_tol, double eigen_tol) const {
  if (rho.rows() != rho.cols() || rho.rows() == 0) throw UsageError("density matrix must be square and non-empty");
  if (!rho.allFinite()) throw UsageError("density matrix has non-finite entries");
  if (hermiticity_defect() > hermiticity_tol) throw UsageError("density matrix is not Hermitian");
  if (trace_defect() > trace_tol) throw UsageError("density matrix trace differs from 1");
  if (min_eigenvalue() < -eigen_tol) throw UsageError("density matrix has a negative eigenvalue");
}

FockDensity evolve_density(const FockDensity& rho0, const phasespace::ReservoirParams& res, double t,
                           const EvolveOptions& options, EvolveDiagnostics* diagnostics) {
  res.validate();
  if (t < 0.0) throw UsageError("evolution time must be >= 0");
  if (rho0.dim() < 2) throw UsageError("density matrix dimension must be >= 2");
  EvolveDiagnostics diag;
  if (t == 0.0) {
    diag.trace_defect = rho0.trace_defect();
    diag.hermiticity_defect = rho0.hermiticity_defect();
    if (diagnostics) *diagnostics = diag;
    return rho0;
  }
  const MasterEquation eq(rho0.dim(), res);
  std::size_t steps = static_cast<std::size_t>(std::ceil(t * eq.stiffness / 2.0)) + 1;
  Eigen::MatrixXcd coarse = eq.integrate(rho0.rho, t, steps);
  while (true) {
    if (2 * steps > options.max_steps) {
      throw StepSizeUnderflowError("RK4 step count exceeded " + std::to_string(options.max_steps));
    }
    Eigen::MatrixXcd fine = eq.integrate(rho0.rho, t, 2 * steps);
    const double err = (fine - coarse).cwiseAbs().maxCoeff() / 15.0;
    steps *= 2;
    if (fine.allFinite() && err <= options.tolerance) {
      diag.steps = steps;
      diag.error_estimate = err;
      FockDensity out;
      out.rho = std::move(fine);
      diag.trace_defect = std::abs(out.rho.trace() - rho0.rho.trace());
      diag.hermiticity_defect = out.hermiticity_defect();
      if (diagnostics) *diagnostics = diag;
      if (diag.trace_defect > options.leakage_tolerance) {
        throw TruncationError("norm leaking through the Fock truncation edge (" +
                                  std::to_string(diag.trace_defect) + ")",
                              rho0.dim() + std::max<std::size_t>(16, rho0.dim() / 2));
      }
      return out;
    }
    coarse = std::move(fine);
  }
}

double wigner_from_density(const FockDensity& rho, double p, double q) {
  const std::size_t dim = rho.dim();
  const cdouble alpha = cdouble(q, p) / std::numbers::sqrt2;
  const double a = std::abs(alpha);
  const double arg = std::arg(alpha);
  double total = 0.0;
  for (std::size_t d = 0; d < dim; ++d) {
    const auto col = wigner_kernel_column(int(d), dim - d, a);
    cdouble acc(0.0);
    for (std::size_t k = 0; k + d < dim; ++k) {
      acc += rho.rho(static_cast<Eigen::Index>(k + d), static_cast<Eigen::Index>(k)) * col[k];
    }
    // |m><k| with m = k + d carries (2 alpha*)^d
    acc *= std::polar(1.0, -double(d) * arg);
    total += (d == 0) ? acc.real() : 2.0 * acc.real();
  }
  return total / kPi;
}

double purity(const FockDensity& rho) { return (rho.rho * rho.rho).trace().real(); }

double diagonal_purity_fock(const FockDensity& rho) {
  double s = 0.0;
  for (Eigen::Index m = 0; m < rho.rho.rows(); ++m) s += std::norm(rho.rho(m, m).real());
  return s;
}

std::vector<double> populations(const FockDensity& rho) {
  std::vector<double> out(rho.dim());
  for (std::size_t m = 0; m < rho.dim(); ++m) {
    out[m] = rho.rho(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m)).real();
  }
  return out;
}

cdouble mean_annihilation(const FockDensity& rho) {
  cdouble s(0.0);
  for (Eigen::Index m = 0; m + 1 < rho.rho.rows(); ++m) s += std::sqrt(double(m + 1)) * rho.rho(m + 1, m);
  return s;
}

protocol::VibronicState step2_state_by_diagonalization(int n, cdouble beta, double varphi, std::size_t dim) {
  if (n < 0 || dim <= static_cast<std::size_t>(n)) throw UsageError("Fock dimension must exceed n >= 0");
  const Eigen::Index big = static_cast<Eigen::Index>(2 * dim + 64);
  // beta = i |beta| e^{-i theta}
  const double theta = kPi / 2.0 - std::arg(beta);
  const double strength = std::numbers::sqrt2 * std::abs(beta);
  Eigen::MatrixXcd X = Eigen::MatrixXcd::Zero(big, big);
  for (Eigen::Index m = 0; m + 1 < big; ++m) {
    const double s = std::sqrt(double(m + 1)) / std::numbers::sqrt2;
    X(m, m + 1) = s * std::polar(1.0, theta);   // a e^{i theta}
    X(m + 1, m) = s * std::polar(1.0, -theta);  // a+ e^{-i theta}
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(X);
  const auto& V = es.eigenvectors();
  const Eigen::VectorXd& x = es.eigenvalues();
  const Eigen::VectorXcd coeffs = V.row(n).adjoint();  // V^dagger e_n
  Eigen::VectorXcd c(big), s(big);
  for (Eigen::Index j = 0; j < big; ++j) {
    c(j) = std::cos(strength * x(j)) * coeffs(j);
    s(j) = std::sin(strength * x(j)) * coeffs(j);
  }
  const Eigen::VectorXcd up = V * c;
  const Eigen::VectorXcd down = cdouble(0.0, -1.0) * std::polar(1.0, varphi) * (V * s);
  protocol::VibronicState out;
  out.up.amps.resize(dim);
  out.down.amps.resize(dim);
  double kept = 0.0;
  for (std::size_t m = 0; m < dim; ++m) {
    out.up.amps[m] = up(static_cast<Eigen::Index>(m));
    out.down.amps[m] = down(static_cast<Eigen::Index>(m));
    kept += std::norm(out.up.amps[m]) + std::norm(out.down.amps[m]);
  }
  out.up.truncation_loss = out.down.truncation_loss = 1.0 - kept;
  return out;
}

double support_radius(const states::SuperpositionSpec& spec, double clip) {
  double R = std::numbers::sqrt2 * spec.beta_abs + 2.0;
  for (int iter = 0; iter < 400; ++iter, R += 0.25) {
    double worst = 0.0;
    for (int k = 0; k <= 256; ++k) {
      const double s = -R + 2.0 * R * k / 256.0;
      worst = std::max({worst, std::fabs(phasespace::wigner0(spec, s, R)), std::fabs(phasespace::wigner0(spec, s, -R)),
                        std::fabs(phasespace::wigner0(spec, R, s)), std::fabs(phasespace::wigner0(spec, -R, s))});
    }
    if (worst < clip) return R;
  }
  throw UsageError("initial Wigner function support exceeds the search range");
}

ConvolutionResult wigner_convolution(const states::SuperpositionSpec& spec,
                                     const phasespace::ReservoirParams& res, double t,
                                     std::span<const std::pair<double, double>> points,
                                     const ConvolutionOptions& options) {
  res.validate();
  if (!(t > 0.0)) throw DeltaLimitError("kernel convolution needs t > 0");
  const double u = res.compact_time(t);
  const double width = (1.0 + 2.0 * res.nbar) * u;
  const double decay = std::exp(-res.gamma * t);
  const double cw = std::cos(res.omega0 * t), sw = std::sin(res.omega0 * t);

  ConvolutionResult out;
  out.radius = support_radius(spec, options.clip);
  std::vector<double> previous;
  for (std::size_t m = options.initial_nodes; m <= options.max_nodes; m *= 2) {
    const auto gl = gauss_legendre(m, -out.radius, out.radius);
    const Eigen::Index M = static_cast<Eigen::Index>(m);
    // Weighted initial Wigner samples: rows p', columns q'
    Eigen::MatrixXd A(M, M);
    parallel_rows(m, [&](std::size_t i) {
      for (std::size_t j = 0; j < m; ++j) {
        A(Eigen::Index(i), Eigen::Index(j)) =
            gl.weights[i] * gl.weights[j] * phasespace::wigner0(spec, gl.nodes[i], gl.nodes[j]);
      }
    });
    std::vector<double> values(points.size());
    parallel_rows(points.size(), [&](std::size_t k) {
      const auto [p, q] = points[k];
      const double pt = p * cw + q * sw;
      const double qt = q * cw - p * sw;
      Eigen::VectorXd gp(M), gq(M);
      for (Eigen::Index i = 0; i < M; ++i) {
        const double dp = pt - decay * gl.nodes[i];
        const double dq = qt - decay * gl.nodes[i];
        gp(i) = std::exp(-dp * dp / width);
        gq(i) = std::exp(-dq * dq / width);
      }
      values[k] = gp.dot(A * gq) / (kPi * width);
    });
    if (!previous.empty()) {
      double change = 0.0;
      for (std::size_t k = 0; k < values.size(); ++k) change = std::max(change, std::fabs(values[k] - previous[k]));
      out.last_change = change;
      out.nodes_per_axis = m;
      out.values = values;
      if (change < options.tolerance) return out;
    }
    previous = std::move(values);
  }
  throw BudgetExhaustedError("kernel convolution did not converge within " + std::to_string(options.max_nodes) +
                                 " nodes per axis",
                             out.values.empty() ? 0.0 : out.values.front(), out.last_change);
}

namespace {

struct WignerSamples {
  GaussLegendre gl;
  Eigen::MatrixXd weighted;  // w_i w_j W0(p_i, q_j)
};

WignerSamples sample_initial(const states::SuperpositionSpec& spec, double radius, std::size_t m) {
  WignerSamples s{gauss_legendre(m, -radius, radius), Eigen::MatrixXd(Eigen::Index(m), Eigen::Index(m))};
  parallel_rows(m, [&](std::size_t i) {
    for (std::size_t j = 0; j < m; ++j) {
      s.weighted(Eigen::Index(i), Eigen::Index(j)) =
          s.gl.weights[i] * s.gl.weights[j] * phasespace::wigner0(spec, s.gl.nodes[i], s.gl.nodes[j]);
    }
  });
  return s;
}

template <class Level>
QuadResult refine_purity(const PurityQuadOptions& options, Level level) {
  QuadResult res;
  bool have = false;
  for (std::size_t m = options.initial_nodes; m <= options.max_nodes; m *= 2) {
    const double v = level(m);
    res.evaluations += m * m * m * m;
    if (have) {
      res.last_change = std::fabs(v - res.value);
      res.value = v;
      res.nodes_per_axis = m;
      if (res.last_change < options.tolerance) return res;
    }
    res.value = v;
    have = true;
  }
  throw BudgetExhaustedError("purity quadrature did not converge within " + std::to_string(options.max_nodes) +
                                 " nodes per axis",
                             res.value, res.last_change);
}

void check_compact(double nbar, double u) {
  if (!(u > 0.0 && u < 1.0)) throw UsageError("purity quadrature needs u in (0, 1)");
  if (!(nbar >= 0.0)) throw UsageError("nbar must be >= 0");
}

}  // namespace

QuadResult total_purity_quadrature(const states::SuperpositionSpec& spec, double nbar, double u,
                                   const PurityQuadOptions& options) {
  check_compact(nbar, u);
  const double cu = (1.0 + 2.0 * nbar) * u;
  const double radius = support_radius(spec, options.clip);
  return refine_purity(options, [&](std::size_t m) {
    const auto s = sample_initial(spec, radius, m);
    const Eigen::Index M = static_cast<Eigen::Index>(m);
    // The kernel factorizes into g(p'-p'') g(q'-q'')
    Eigen::MatrixXd G(M, M);
    for (Eigen::Index i = 0; i < M; ++i) {
      for (Eigen::Index k = 0; k < M; ++k) {
        const double d = s.gl.nodes[i] - s.gl.nodes[k];
        G(i, k) = std::exp(-(1.0 - u) * d * d / (2.0 * cu));
      }
    }
    const Eigen::MatrixXd GAG = G * s.weighted * G;
    return s.weighted.cwiseProduct(GAG).sum() / cu;
  });
}

QuadResult diagonal_purity_quadrature(const states::SuperpositionSpec& spec, double nbar, double u,
                                      const PurityQuadOptions& options) {
  check_compact(nbar, u);
  const double cu = (1.0 + 2.0 * nbar) * u;
  const double radius = support_radius(spec, options.clip);
  return refine_purity(options, [&](std::size_t m) {
    const auto s = sample_initial(spec, radius, m);
    // The kernel sees only the two radii, and the rule is symmetric, so
    // points (+-x_i, +-x_j) and (+-x_j, +-x_i) share one radius.
    const std::size_t half = (m + 1) / 2;
    auto fold = [m](std::size_t i) { return std::min(i, m - 1 - i); };
    std::vector<double> r, w;
    std::vector<std::size_t> slot(half * half, 0);
    for (std::size_t i = 0; i < half; ++i) {
      for (std::size_t j = 0; j <= i; ++j) {
        slot[i * half + j] = r.size();
        r.push_back(std::hypot(s.gl.nodes[i], s.gl.nodes[j]));
        w.push_back(0.0);
      }
    }
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        const std::size_t a = std::max(fold(i), fold(j)), b = std::min(fold(i), fold(j));
        w[slot[a * half + b]] += s.weighted(Eigen::Index(i), Eigen::Index(j));
      }
    }
    const std::size_t count = r.size();
    std::vector<double> rows(count, 0.0);
    parallel_rows(count, [&](std::size_t a) {
      double acc = 0.0;
      for (std::size_t b = 0; b < a; ++b) {
        const double dr = r[a] - r[b];
        const double x = (1.0 - u) * r[a] * r[b] / cu;
        acc += w[b] * std::exp(-(1.0 - u) * dr * dr / (2.0 * cu)) * specfun::bessel_i0_scaled(x);
      }
      const double self = specfun::bessel_i0_scaled((1.0 - u) * r[a] * r[a] / cu);
      rows[a] = w[a] * (2.0 * acc + w[a] * self);
    });
    double total = 0.0;
    for (double v : rows) total += v;
    return total / cu;
  });
}

}  // namespace dncircle::oracle
