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

// Acceptance runner: one PASS/FAIL line per criterion.
//   acceptance            run all criteria
//   acceptance 3 7        run the listed criteria

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <numbers>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "dncircle/cli/commands.hpp"
#include "dncircle/coherence.hpp"
#include "dncircle/errors.hpp"
#include "dncircle/oracle.hpp"
#include "dncircle/phasespace.hpp"
#include "dncircle/protocol.hpp"
#include "dncircle/states.hpp"

namespace {

namespace fs = std::filesystem;
namespace cli = dncircle::cli;
namespace co = dncircle::coherence;
namespace orc = dncircle::oracle;
namespace pr = dncircle::protocol;
namespace ps = dncircle::phasespace;
namespace st = dncircle::states;
using st::SuperpositionSpec;
using Clock = std::chrono::steady_clock;

class Verdict {
 public:
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass_ = false;
      failures_.push_back(what);
    }
  }
  void note(const std::string& text) { notes_.push_back(text); }
  bool pass() const { return pass_; }
  const std::vector<std::string>& failures() const { return failures_; }
  const std::vector<std::string>& notes() const { return notes_; }

 private:
  bool pass_ = true;
  std::vector<std::string> failures_;
  std::vector<std::string> notes_;
};

std::string fmt(const char* format, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* format, ...) {
  char buf[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof buf, format, args);
  va_end(args);
  return buf;
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

class ScratchDir {
 public:
  ScratchDir() {
    path_ = fs::temp_directory_path() / ("dncircle-acceptance-" + std::to_string(::getpid()));
    fs::create_directories(path_);
  }
  ~ScratchDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

bool within(double value, double target, double tol) { return std::fabs(value - target) <= tol; }

// Tallest interior maximum from a curve summary in a figure sidecar.
const cli::json* tallest_interior_max(const cli::json& curve) {
  const cli::json* best = nullptr;
  for (const auto& m : curve["maxima"]) {
    if (!best || m["value"].get<double>() > (*best)["value"].get<double>()) best = &m;
  }
  return best;
}

const cli::json* find_curve(const cli::json& curves, int n, int ell = -1) {
  for (const auto& cv : curves) {
    if (cv["excitation"] != n) continue;
    if (ell >= 0 && cv["cycles"] != ell) continue;
    return &cv;
  }
  return nullptr;
}

// Tensor Gauss-Legendre integral over [-R, R]^2.
double integrate_2d(const std::function<double(double, double)>& f, double R, std::size_t nodes) {
  const auto gl = orc::gauss_legendre(nodes, -R, R);
  double sum = 0.0;
  for (std::size_t i = 0; i < nodes; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < nodes; ++j) row += gl.weights[j] * f(gl.nodes[i], gl.nodes[j]);
    sum += gl.weights[i] * row;
  }
  return sum;
}

struct WignerCase {
  int n, N;
  double beta;
};

const std::vector<WignerCase> kWignerCases{{0, 4, 1.5}, {2, 8, 3.03}};

// ---------------------------------------------------------------------------

Verdict criterion1(const fs::path& scratch) {
  Verdict v;
  cli::RunConfig c;
  c.out = (scratch / "ac1").string();
  std::ostringstream log;
  const auto start = Clock::now();
  const auto res = cli::cmd_fig1(c, log);
  const double elapsed = seconds_since(start);
  const auto& curves = res.sidecar["results"]["curves"];

  const auto* n2 = find_curve(curves, 2);
  const auto* top = n2 ? tallest_interior_max(*n2) : nullptr;
  v.require(top != nullptr, "n=2 curve has an interior maximum");
  if (top) {
    const double b = (*top)["beta"], p = (*top)["value"];
    v.note(fmt("n=2 max %.5f at |b|=%.5f", p, b));
    v.require(within(p, 0.68, 0.01), "n=2 maximum 0.68 +- 0.01");
    v.require(within(b, 1.27, 0.02), "n=2 maximum location 1.27 +- 0.02");
  }

  // n=0: 1/2 (1 + e^{-2b^2}), monotone decreasing, no interior extremum.
  const auto* n0 = find_curve(curves, 0);
  v.require(n0 && (*n0)["maxima"].empty() && (*n0)["minima"].empty(), "n=0 curve has no interior extremum");
  double n0_err = 0.0;
  for (double b = 0.0; b <= 4.0; b += 0.01) {
    n0_err = std::max(n0_err, std::fabs(pr::line_probability(0, b) - 0.5 * (1.0 + std::exp(-2.0 * b * b))));
  }
  v.require(n0_err <= 1e-15, "n=0 curve equals 1/2 (1 + exp(-2 b^2))");

  // n=1: single interior minimum at sqrt(3)/2, no interior maximum.
  const auto* n1 = find_curve(curves, 1);
  v.require(n1 && (*n1)["maxima"].empty() && (*n1)["minima"].size() == 1, "n=1 curve has one interior minimum");
  if (n1 && (*n1)["minima"].size() == 1) {
    const double b = (*n1)["minima"][0]["beta"];
    v.note(fmt("n=1 min at |b|=%.5f", b));
    v.require(within(b, std::sqrt(3.0) / 2.0, 0.02), "n=1 minimum at sqrt(3)/2 +- 0.02");
  }
  v.note(fmt("runtime %.3f s", elapsed));
  v.require(elapsed < 1.0, "runtime < 1 s");
  return v;
}

Verdict criterion2(const fs::path& scratch) {
  Verdict v;
  cli::RunConfig c;
  c.out = (scratch / "ac2").string();
  std::ostringstream log;
  const auto start = Clock::now();
  const auto res = cli::cmd_fig2(c, log);
  const double elapsed = seconds_since(start);
  const auto& curves = res.sidecar["results"]["curves"];

  struct Expect {
    int ell, n;
    double value, beta, beta_tol;
  };
  for (const auto& e : {Expect{1, 1, 0.37, 1.65, 0.03}, Expect{1, 2, 0.34, 1.28, 0.03}, Expect{2, 1, 0.25, 1.96, 0.03},
                        Expect{2, 2, 0.20, 3.03, 0.05}}) {
    const auto* cv = find_curve(curves, e.n, e.ell);
    const auto* top = cv ? tallest_interior_max(*cv) : nullptr;
    const std::string tag = fmt("l=%d n=%d", e.ell, e.n);
    v.require(top != nullptr, tag + " has an interior maximum");
    if (!top) continue;
    const double b = (*top)["beta"], p = (*top)["value"];
    v.note(fmt("%s max %.5f at |b|=%.4f", tag.c_str(), p, b));
    v.require(within(p, e.value, 0.01), tag + " maximum value");
    v.require(within(b, e.beta, e.beta_tol), tag + " maximum location");
  }
  const auto* spot = find_curve(curves, 2, 2);
  double spot_value = NAN;
  if (spot) {
    for (const auto& s : (*spot)["spot_values"]) {
      if (s["beta"] == 1.27) spot_value = s["value"];
    }
  }
  v.note(fmt("P(l=2, n=2, |b|=1.27) = %.5f", spot_value));
  v.require(within(spot_value, 0.18, 0.01), "spot value 0.18 +- 0.01");
  v.note(fmt("runtime %.3f s", elapsed));
  v.require(elapsed < 1.0, "runtime < 1 s");
  return v;
}

Verdict criterion3(const fs::path&) {
  Verdict v;
  const pr::ProtocolParams params;
  double id_err = 0.0, t_abs = 0.0, t_rel = 0.0;
  for (int ell = 0; ell <= 6; ++ell) {
    for (int n = 0; n <= 5; ++n) {
      for (double b = 0.0; b <= 4.0; b += 0.05) {
        const double N = st::normalization_constant(SuperpositionSpec::from_cycles(n, ell, b));
        id_err = std::max(id_err, std::fabs(N * N * pr::circle_probability(n, ell, b) - std::ldexp(1.0, -2 * (ell + 1))));
        const auto plan = pr::plan_sequence(params, n, ell, b * pr::step2_displacement(params, 1.0) /
                                                                std::abs(pr::step2_displacement(params, 1.0)));
        double sum = 0.0;
        for (double tk : plan.pulse_durations) sum += tk;
        t_abs = std::max(t_abs, std::fabs(plan.T - sum));
        if (plan.T > 0.0) t_rel = std::max(t_rel, std::fabs(plan.T - sum) / plan.T);
      }
    }
  }
  v.note(fmt("|N|^2 P identity max residual %.2e", id_err));
  v.note(fmt("closed-form T vs sum t_k max residual %.2e us (relative %.2e)", t_abs, t_rel));
  v.require(id_err <= 1e-12, "|N|^2 P = 2^(-2(l+1)) to 1e-12");
  v.require(t_abs <= 1e-12, "closed-form T equals sum t_k to 1e-12");

  struct Worked {
    int ell, n;
    double beta, reference;
  };
  for (const auto& w : {Worked{1, 1, 1.65, 401.93}, Worked{1, 2, 1.28, 401.85}, Worked{2, 1, 1.96, 604.5},
                        Worked{2, 2, 3.03, 605.5}}) {
    const auto plan = pr::plan_sequence(params, w.n, w.ell, w.beta);
    const double rel = std::fabs(plan.T_t - w.reference) / w.reference;
    v.note(fmt("T_t(l=%d, n=%d, |b|=%.2f) = %.3f us vs %.2f (%.2f%%)", w.ell, w.n, w.beta, plan.T_t, w.reference,
               100.0 * rel));
    v.require(rel <= 0.01, fmt("T_t within 1%% for l=%d n=%d", w.ell, w.n));
  }
  return v;
}

Verdict criterion4(const fs::path&) {
  Verdict v;
  const pr::ProtocolParams params;
  const auto start = Clock::now();
  double worst = 0.0;
  std::size_t max_dim = 0;
  for (int ell : {1, 2}) {
    for (int n : {0, 1, 2}) {
      for (double b : {1.0, 3.03}) {
        const auto target = SuperpositionSpec::from_cycles(n, ell, b);
        const std::size_t dim = std::min<std::size_t>(128, st::default_dim(target));
        max_dim = std::max(max_dim, dim);
        const auto beta = pr::step2_displacement(params, b / params.Omega());
        const auto r = pr::run_sequence_oracle(params, n, ell, beta, dim);
        worst = std::max(worst, 1.0 - r.fidelity);
        v.require(r.fidelity >= 1.0 - 1e-8, fmt("fidelity for l=%d n=%d |b|=%.2f", ell, n, b));
      }
    }
  }
  const double elapsed = seconds_since(start);
  v.note(fmt("worst infidelity %.2e, largest dim %zu, runtime %.2f s", worst, max_dim, elapsed));
  v.require(max_dim <= 128, "dim <= 128");
  v.require(elapsed < 30.0, "runtime < 30 s");
  return v;
}

std::vector<std::pair<double, double>> grid41() {
  std::vector<std::pair<double, double>> pts;
  const ps::PhaseGrid bounds;
  for (int i = 0; i < 41; ++i) {
    for (int j = 0; j < 41; ++j) {
      pts.emplace_back(bounds.p_min + (bounds.p_max - bounds.p_min) * i / 40.0,
                       bounds.q_min + (bounds.q_max - bounds.q_min) * j / 40.0);
    }
  }
  return pts;
}

Verdict criterion5(const fs::path&) {
  Verdict v;
  const auto start = Clock::now();
  const auto pts = grid41();
  double worst_kernel = 0.0, worst_fock = 0.0;
  for (const auto& wc : kWignerCases) {
    const auto spec = SuperpositionSpec::circle(wc.n, wc.N, wc.beta);
    for (double nbar : {0.0, 1.0}) {
      const ps::ReservoirParams res{1.0, 1.0, nbar};
      const auto rho0 =
          orc::FockDensity::from_vector(st::build_fock_vector(spec, co::default_phonon_count(spec, nbar)));
      for (double u : {0.1, 0.5, 0.9}) {
        const double t = res.time_for(u);
        const auto conv = orc::wigner_convolution(spec, res, t, pts);
        const auto rho = orc::evolve_density(rho0, res, t);
        double ek = 0.0, ef = 0.0;
        for (std::size_t k = 0; k < pts.size(); ++k) {
          const auto [p, q] = pts[k];
          const double w = ps::wigner_t(spec, res, t, p, q);
          ek = std::max(ek, std::fabs(conv.values[k] - w));
          ef = std::max(ef, std::fabs(orc::wigner_from_density(rho, p, q) - w));
        }
        const std::string tag = fmt("(n=%d, N=%d, |b|=%.2f, nbar=%g, u=%g)", wc.n, wc.N, wc.beta, nbar, u);
        v.require(ek <= 1e-6, "kernel quadrature " + tag);
        v.require(ef <= 1e-5, "Fock reconstruction " + tag);
        worst_kernel = std::max(worst_kernel, ek);
        worst_fock = std::max(worst_fock, ef);
      }
    }
  }
  const double elapsed = seconds_since(start);
  v.note(fmt("max |closed - kernel| %.2e, max |closed - Fock| %.2e, runtime %.1f s", worst_kernel, worst_fock, elapsed));
  v.require(elapsed < 180.0, "runtime < 3 min");
  return v;
}

Verdict criterion6(const fs::path&) {
  Verdict v;
  double worst_norm = 0.0, worst_sym = 0.0, worst_thermal = 0.0;
  for (const auto& wc : kWignerCases) {
    const auto spec = SuperpositionSpec::circle(wc.n, wc.N, wc.beta);
    const double R = orc::support_radius(spec) + 8.0;
    for (double nbar : {0.0, 1.0}) {
      for (double u : {0.0, 0.1, 0.5, 0.9}) {
        const double integral = integrate_2d(
            [&](double p, double q) { return ps::wigner_compact(spec, nbar, u, 0.0, p, q); }, R, 280);
        worst_norm = std::max(worst_norm, std::fabs(integral - 1.0));
      }
      for (double p = -4.0; p <= 4.0; p += 0.5) {
        for (double q = -4.0; q <= 4.0; q += 0.5) {
          const double s = 1.0 + 2.0 * nbar;
          const double thermal = std::exp(-(p * p + q * q) / s) / (std::numbers::pi * s);
          worst_thermal =
              std::max(worst_thermal, std::fabs(ps::wigner_compact(spec, nbar, 1.0 - 1e-9, 0.0, p, q) - thermal));
        }
      }
    }
  }
  for (int N : {2, 3, 4, 5, 8, 16}) {
    for (int n : {0, 1, 2}) {
      const auto spec = SuperpositionSpec::circle(n, N, 2.0);
      const double a = 2.0 * std::numbers::pi / N;
      for (double p = -4.0; p <= 4.0; p += 0.4) {
        for (double q = -4.0; q <= 4.0; q += 0.4) {
          const double q2 = q * std::cos(a) - p * std::sin(a), p2 = q * std::sin(a) + p * std::cos(a);
          worst_sym = std::max(worst_sym, std::fabs(ps::wigner0(spec, p, q) - ps::wigner0(spec, p2, q2)));
        }
      }
    }
  }
  v.note(fmt("max |integral - 1| %.2e, rotation residual %.2e, thermal limit residual (u = 1 - 1e-9) %.2e",
             worst_norm, worst_sym, worst_thermal));
  v.require(worst_norm <= 1e-6, "integral equals 1 to 1e-6");
  v.require(worst_sym <= 1e-10, "2 pi / N rotational invariance to 1e-10");
  v.require(worst_thermal <= 1e-5, "thermal limit to 1e-5");
  return v;
}

Verdict criterion7(const fs::path&) {
  Verdict v;
  const auto spec = SuperpositionSpec::from_cycles(2, 2, 3.03);
  const ps::ReservoirParams res{1.0, 1.0, 1.0};
  const ps::PhaseGrid bounds;
  auto grid = [&](double gamma_t, ps::Part part) {
    const double t = gamma_t / res.gamma;
    return ps::grid_eval([&](double p, double q) { return ps::wigner_t_part(spec, res, t, p, q, part); }, bounds);
  };
  struct Parts {
    ps::PhaseGrid full, diag, nondiag;
  };
  std::vector<Parts> at;
  double residual = 0.0;
  for (double gt : {0.0, 0.1, 1.0}) {
    Parts p{grid(gt, ps::Part::full), grid(gt, ps::Part::diagonal), grid(gt, ps::Part::nondiagonal)};
    for (std::size_t k = 0; k < p.full.values.size(); ++k) {
      residual = std::max(residual, std::fabs(p.full.values[k] - p.diag.values[k] - p.nondiag.values[k]));
    }
    at.push_back(std::move(p));
  }
  const double nd0 = at[0].nondiag.max_abs(), nd01 = at[1].nondiag.max_abs();
  const double d1 = at[2].diag.max_abs(), nd1 = at[2].nondiag.max_abs();
  std::size_t not_below = 0;
  for (std::size_t k = 0; k < at[0].nondiag.values.size(); ++k) {
    if (std::fabs(at[1].nondiag.values[k]) >= std::fabs(at[0].nondiag.values[k])) ++not_below;
  }
  v.note(fmt("part sum residual %.2e", residual));
  v.note(fmt("nondiagonal max |W|: %.5f at gt=0, %.5f at gt=0.1 (ratio %.3f)", nd0, nd01, nd01 / nd0));
  v.note(fmt("gt=1: diagonal max |W| %.5f, nondiagonal %.2e", d1, nd1));
  v.note(fmt("info: %zu of %zu grid points have |W_nd(0.1)| >= |W_nd(0)| (zero crossings of the t=0 fringes)",
             not_below, at[0].nondiag.values.size()));
  v.note(fmt("info: gt=0.1 diagonal max |W| %.5f", at[1].diag.max_abs()));
  v.require(residual <= 1e-12, "diagonal + nondiagonal = full to 1e-12");
  v.require(nd01 < nd0, "nondiagonal amplitude at gt=0.1 below its t=0 value");
  v.require(d1 > nd1, "diagonal dominates at gt=1");
  return v;
}

Verdict criterion8(const fs::path&) {
  Verdict v;
  const auto start = Clock::now();
  struct Worked {
    int n, ell;
    double reference;
  };
  co::CoherenceOptions corrected, printed;
  corrected.include_phonon = printed.include_phonon = false;
  printed.form = co::ClosedForm::as_printed;
  for (const auto& w : {Worked{0, 2, 0.0443}, Worked{1, 2, 0.0438}, Worked{2, 2, 0.0076}, Worked{2, 0, 0.0428},
                        Worked{2, 1, 0.0247}}) {
    const auto spec = SuperpositionSpec::from_cycles(w.n, w.ell, 3.03);
    const double C = co::coherence_at_compact_time(spec, 1.0, 0.2, corrected).C;
    const double Cp = co::coherence_at_compact_time(spec, 1.0, 0.2, printed).C;
    const double tol = std::max(0.02 * w.reference, 0.0005);
    v.note(fmt("n=%d l=%d: C=%.5f (reference %.4f, printed form %.5f)", w.n, w.ell, C, w.reference, Cp));
    v.require(within(C, w.reference, tol), fmt("C(n=%d, l=%d, u=0.2) within tolerance", w.n, w.ell));

    const double C0 = co::coherence_at_compact_time(spec, 1.0, 0.0, corrected).C;
    const double Cend = co::coherence_at_compact_time(spec, 1.0, 1.0 - 1e-6, corrected).C;
    v.require(C0 == 1.0, fmt("C(0) = 1 for n=%d l=%d", w.n, w.ell));
    v.require(std::fabs(Cend) <= 1e-3, fmt("C(1 - 1e-6) <= 1e-3 for n=%d l=%d", w.n, w.ell));
  }
  const double elapsed = seconds_since(start);
  v.note(fmt("runtime %.2f s", elapsed));
  v.require(elapsed < 120.0, "runtime < 2 min");
  return v;
}

Verdict criterion9(const fs::path&) {
  Verdict v;
  const double nbar = 1.0;
  const ps::ReservoirParams res{1.0, 1.0, nbar};
  double worst_fock = 0.0;
  for (int n = 0; n <= 2; ++n) {
    for (int ell = 0; ell <= 2; ++ell) {
      for (double b : {1.27, 3.03}) {
        const auto spec = SuperpositionSpec::from_cycles(n, ell, b);
        const auto rho0 =
            orc::FockDensity::from_vector(st::build_fock_vector(spec, co::default_phonon_count(spec, nbar)));
        for (double u : {0.1, 0.2, 0.5}) {
          const auto rho = orc::evolve_density(rho0, res, res.time_for(u));
          const double mu = co::total_purity(spec, nbar, u), la = co::diagonal_purity(spec, nbar, u);
          const double em = std::fabs(mu - orc::purity(rho)) / orc::purity(rho);
          const double el = std::fabs(la - orc::diagonal_purity_fock(rho)) / orc::diagonal_purity_fock(rho);
          worst_fock = std::max({worst_fock, em, el});
          v.require(em <= 1e-4 && el <= 1e-4, fmt("jets vs Fock (n=%d, l=%d, |b|=%.2f, u=%g)", n, ell, b, u));
        }
      }
    }
  }
  v.note(fmt("jets vs Fock max relative error %.2e", worst_fock));

  // Extended tier: four-dimensional quadratures on the small cases.
  const auto start = Clock::now();
  double worst_quad = 0.0;
  orc::PurityQuadOptions opt;
  opt.tolerance = 1e-7;
  opt.max_nodes = 256;
  for (int n : {0, 1}) {
    for (int N : {2, 4}) {
      for (double b : {1.0, 1.5}) {
        const auto spec = SuperpositionSpec::circle(n, N, b);
        for (double u : {0.1, 0.2, 0.5}) {
          const std::string tag = fmt("(n=%d, N=%d, |b|=%.1f, u=%g)", n, N, b, u);
          try {
            const double qt = orc::total_purity_quadrature(spec, nbar, u, opt).value;
            const double qd = orc::diagonal_purity_quadrature(spec, nbar, u, opt).value;
            const double mu = co::total_purity(spec, nbar, u), la = co::diagonal_purity(spec, nbar, u);
            const double e = std::max(std::fabs(qt - mu) / mu, std::fabs(qd - la) / la);
            worst_quad = std::max(worst_quad, e);
            v.require(e <= 1e-5, "jets vs 4D quadrature " + tag);
          } catch (const dncircle::Error& e) {
            v.require(false, "4D quadrature " + tag + ": " + e.what());
          }
        }
      }
    }
  }
  const double elapsed = seconds_since(start);
  v.note(fmt("jets vs 4D quadrature max relative error %.2e, quadrature runtime %.1f s", worst_quad, elapsed));
  v.require(elapsed < 600.0, "4D quadrature runtime < 10 min");
  return v;
}

Verdict criterion10(const fs::path&) {
  Verdict v;
  const double nbar = 1.0;
  const ps::ReservoirParams res{1.0, 1.0, nbar};
  double worst_pop = 0.0, worst_sum = 0.0, worst_be = 0.0;
  for (int n = 0; n <= 2; ++n) {
    for (int ell = 0; ell <= 2; ++ell) {
      const auto spec = SuperpositionSpec::from_cycles(n, ell, 3.03);
      const std::size_t count = co::default_phonon_count(spec, nbar);
      const auto rho0 = orc::FockDensity::from_vector(st::build_fock_vector(spec, count));
      for (double u : {0.0, 0.2, 0.9}) {
        const auto pops = orc::populations(u == 0.0 ? rho0 : orc::evolve_density(rho0, res, res.time_for(u)));
        const auto P = co::phonon_distribution(spec, nbar, u, count);
        double err = 0.0;
        for (std::size_t m = 0; m < count; ++m) err = std::max(err, std::fabs(P[m] - pops[m]));
        const double sum_defect = std::fabs(std::accumulate(P.begin(), P.end(), 0.0) - 1.0);
        worst_pop = std::max(worst_pop, err);
        worst_sum = std::max(worst_sum, sum_defect);
        v.require(err <= 1e-5, fmt("populations (n=%d, l=%d, u=%g)", n, ell, u));
        v.require(sum_defect <= 1e-8, fmt("population sum (n=%d, l=%d, u=%g)", n, ell, u));
      }
      const auto late = co::phonon_distribution(spec, nbar, 1.0 - 1e-9, std::size_t(40));
      for (int m = 0; m < 40; ++m) {
        worst_be = std::max(worst_be, std::fabs(late[m] - std::pow(nbar, m) / std::pow(1.0 + nbar, m + 1)));
      }
    }
  }
  v.note(fmt("max |P - Fock| %.2e, max |sum - 1| %.2e, Bose-Einstein residual (u = 1 - 1e-9) %.2e", worst_pop,
             worst_sum, worst_be));
  v.require(worst_be <= 1e-6, "Bose-Einstein limit to 1e-6");
  return v;
}

struct Criterion {
  const char* title;
  Verdict (*run)(const fs::path&);
};

const Criterion kCriteria[] = {
    {"line probability maxima", criterion1},
    {"circle probability maxima and spot value", criterion2},
    {"protocol identities and preparation times", criterion3},
    {"pulse sequence state-vector oracle", criterion4},
    {"Wigner closed form vs kernel quadrature and Fock evolution", criterion5},
    {"Wigner normalization, symmetry and thermal limit", criterion6},
    {"diagonal and nondiagonal part properties", criterion7},
    {"coherence measure worked values", criterion8},
    {"purity jets vs Fock and 4D quadrature", criterion9},
    {"phonon distribution", criterion10},
};

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) {
    const int k = std::atoi(argv[i]);
    if (k < 1 || k > int(std::size(kCriteria))) {
      std::cerr << "usage: acceptance [criterion 1-" << std::size(kCriteria) << "]...\n";
      return 2;
    }
    selected.push_back(k);
  }
  if (selected.empty()) {
    for (int k = 1; k <= int(std::size(kCriteria)); ++k) selected.push_back(k);
  }

  ScratchDir scratch;
  int failed = 0;
  for (int k : selected) {
    const auto& c = kCriteria[k - 1];
    Verdict v;
    try {
      v = c.run(scratch.path());
    } catch (const std::exception& e) {
      v.require(false, std::string("exception: ") + e.what());
    }
    std::cout << "AC" << k << ' ' << (v.pass() ? "PASS" : "FAIL") << "  " << c.title << '\n';
    for (const auto& n : v.notes()) std::cout << "    " << n << '\n';
    for (const auto& f : v.failures()) std::cout << "    failed: " << f << '\n';
    if (!v.pass()) ++failed;
  }
  std::cout << (selected.size() - failed) << '/' << selected.size() << " criteria passed\n";
  return failed ? 1 : 0;
}
