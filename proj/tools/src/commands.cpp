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

#include "dncircle/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <ostream>
#include <set>
#include <sstream>
#include <utility>

#include "dncircle/cli/extrema.hpp"
#include "dncircle/cli/io.hpp"
#include "dncircle/coherence.hpp"
#include "dncircle/errors.hpp"
#include "dncircle/oracle.hpp"
#include "dncircle/phasespace.hpp"
#include "dncircle/protocol.hpp"
#include "dncircle/states.hpp"

#ifndef DNCIRCLE_VERSION
#define DNCIRCLE_VERSION "0.0.0"
#endif

namespace dncircle::cli {

namespace {

namespace fs = std::filesystem;
using coherence::ClosedForm;
using phasespace::Part;
using states::SuperpositionSpec;

std::string short_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

std::vector<double> linspace(double lo, double hi, std::size_t count) {
  std::vector<double> xs(count);
  for (std::size_t i = 0; i < count; ++i) xs[i] = lo + (hi - lo) * double(i) / double(count - 1);
  return xs;
}

// Collects written files and emits the sidecar describing them.
class Outputs {
 public:
  Outputs(const RunConfig& config, std::string command, std::ostream& log)
      : dir_(config.out), command_(std::move(command)), config_(to_json(config)), log_(log) {
    ensure_directory(dir_);
  }

  void write(const std::string& name, const std::string& contents, json extra = json::object()) {
    atomic_write(dir_ / name, contents);
    json entry = {{"file", name}, {"bytes", contents.size()}, {"sha256", sha256_hex(contents)}};
    entry.update(extra);
    files_.push_back(std::move(entry));
    log_ << "wrote " << (dir_ / name).string() << '\n';
  }

  void write_table(const std::string& name, const CsvTable& table) {
    write(name, table.text(), {{"rows", table.rows()}, {"columns", table.columns()}});
  }

  CommandResult finish(json results, int exit_code = kExitOk) {
    json sidecar = {{"command", command_},
                    {"version", DNCIRCLE_VERSION},
                    {"config", config_},
                    {"outputs", files_},
                    {"results", std::move(results)}};
    const std::string name = command_ + ".json";
    atomic_write(dir_ / name, sidecar.dump(2) + "\n");
    log_ << "wrote " << (dir_ / name).string() << '\n';
    return {exit_code, std::move(sidecar)};
  }

 private:
  fs::path dir_;
  std::string command_;
  json config_;
  json files_ = json::array();
  std::ostream& log_;
};

json extremum_json(const Extremum& e) { return {{"beta", e.x}, {"value", e.value}}; }

// Interior extrema plus the largest sample (endpoints included).
json curve_summary(const std::function<double(double)>& f, const std::vector<double>& xs,
                   const std::vector<double>& ys) {
  json maxima = json::array(), minima = json::array();
  const auto found = locate_extrema(f, xs, ys);
  for (const auto& e : found) (e.maximum ? maxima : minima).push_back(extremum_json(e));
  const auto top = std::max_element(ys.begin(), ys.end()) - ys.begin();
  json global = {{"beta", xs[top]}, {"value", ys[top]}};
  for (const auto& e : found) {
    if (e.maximum && e.value > global["value"].get<double>()) global = extremum_json(e);
  }
  return {{"maxima", maxima}, {"minima", minima}, {"global_max", global}};
}

protocol::cdouble protocol_beta(const protocol::ProtocolParams& params, double beta_abs) {
  const auto dir = protocol::step2_displacement(params, 1.0);
  return beta_abs * dir / std::abs(dir);
}

json plan_json(const protocol::SequencePlan& plan) {
  return {{"ell", plan.ell},
          {"n", plan.n},
          {"beta_abs", std::abs(plan.beta)},
          {"beta_re", plan.beta.real()},
          {"beta_im", plan.beta.imag()},
          {"kappa", plan.kappa()},
          {"kappa_sq", plan.kappa_sq},
          {"pulse_durations", plan.pulse_durations},
          {"T", plan.T},
          {"T_sum", plan.T_sum},
          {"T_residual", std::fabs(plan.T - plan.T_sum)},
          {"tau", plan.tau},
          {"tau_t", plan.tau_t},
          {"T_t", plan.T_t}};
}

struct TimePoint {
  double u = 0.0;
  double t = 0.0;
  double gamma_t = 0.0;
  std::string label;
};

std::vector<TimePoint> time_points(const RunConfig& c) {
  std::vector<TimePoint> out;
  if (!c.time.u.empty()) {
    for (double u : c.time.u) {
      const double t = c.reservoir.time_for(u);
      out.push_back({u, t, c.reservoir.gamma * t, "u" + short_number(u)});
    }
  } else {
    for (double gt : c.time.gamma_t) {
      out.push_back({-std::expm1(-2.0 * gt), gt / c.reservoir.gamma, gt, "gt" + short_number(gt)});
    }
  }
  return out;
}

double wigner_at(const SuperpositionSpec& spec, const RunConfig& c, const TimePoint& tp, Part part, double p,
                 double q) {
  if (tp.u == 0.0) return phasespace::wigner0_part(spec, p, q, part);
  return phasespace::wigner_compact(spec, c.reservoir.nbar, tp.u, c.reservoir.omega0 * tp.t, p, q, part);
}

const char* part_name(Part part) {
  switch (part) {
    case Part::full:
      return "full";
    case Part::diagonal:
      return "diagonal";
    case Part::nondiagonal:
      return "nondiagonal";
  }
  return "full";
}

std::vector<Part> parts_for(const std::string& name) {
  if (name == "all") return {Part::full, Part::diagonal, Part::nondiagonal};
  if (name == "diagonal") return {Part::diagonal};
  if (name == "nondiagonal") return {Part::nondiagonal};
  return {Part::full};
}

// Evaluates one grid per (time, part); adds per-time part properties when all
// three parts are present.
json write_wigner_grids(const RunConfig& c, const std::vector<Part>& parts, const std::string& prefix,
                        Outputs& outputs) {
  const SuperpositionSpec spec = c.spec();
  const auto times = time_points(c);
  json grids = json::array();
  json per_time = json::array();
  for (const auto& tp : times) {
    std::vector<phasespace::PhaseGrid> computed;
    json time_entry = {{"u", tp.u}, {"t", tp.t}, {"gamma_t", tp.gamma_t}};
    for (Part part : parts) {
      auto grid = phasespace::grid_eval(
          [&](double p, double q) { return wigner_at(spec, c, tp, part, p, q); }, c.grid_bounds(), c.threads);
      std::ostringstream os;
      phasespace::write_csv(os, grid);
      const std::string name = prefix + "_" + part_name(part) + "_" + tp.label + ".csv";
      const auto [lo, hi] = std::minmax_element(grid.values.begin(), grid.values.end());
      json stats = {{"part", part_name(part)},
                    {"u", tp.u},
                    {"gamma_t", tp.gamma_t},
                    {"integral", phasespace::trapezoid_integral(grid)},
                    {"max_abs", grid.max_abs()},
                    {"min", *lo},
                    {"max", *hi}};
      outputs.write(name, os.str(), stats);
      stats["file"] = name;
      grids.push_back(stats);
      time_entry[std::string(part_name(part)) + "_max_abs"] = grid.max_abs();
      computed.push_back(std::move(grid));
    }
    if (parts.size() == 3) {
      double residual = 0.0;
      for (std::size_t k = 0; k < computed[0].values.size(); ++k) {
        residual = std::max(residual, std::fabs(computed[0].values[k] - computed[1].values[k] -
                                                computed[2].values[k]));
      }
      time_entry["part_sum_residual"] = residual;
      time_entry["diagonal_dominates"] = computed[1].max_abs() > computed[2].max_abs();
    }
    per_time.push_back(time_entry);
  }
  json results = {{"grids", grids}, {"times", per_time}};
  if (parts.size() == 3 && per_time.size() > 1) {
    const double first = per_time[0]["nondiagonal_max_abs"].get<double>();
    json suppression = json::array();
    for (std::size_t i = 1; i < per_time.size(); ++i) {
      const double later = per_time[i]["nondiagonal_max_abs"].get<double>();
      suppression.push_back({{"u_from", per_time[0]["u"]},
                             {"u_to", per_time[i]["u"]},
                             {"ratio", later / first},
                             {"suppressed", later < first}});
    }
    results["nondiagonal_suppression"] = suppression;
  }
  return results;
}

// --- validate -------------------------------------------------------------

struct Check {
  std::string suite;
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string note;
};

class CheckList {
 public:
  void add(std::string suite, std::string name, double value, double tolerance) {
    checks_.push_back({std::move(suite), std::move(name), value, tolerance,
                       std::isfinite(value) && value <= tolerance, ""});
  }
  void fail(std::string suite, std::string name, const std::string& why) {
    checks_.push_back({std::move(suite), std::move(name), NAN, 0.0, false, why});
  }
  // Runs `body`; a library exception becomes a failed check with its message.
  template <class Body>
  void guard(const std::string& suite, const std::string& name, Body body) {
    try {
      body();
    } catch (const UsageError&) {
      throw;
    } catch (const std::exception& e) {
      fail(suite, name, e.what());
    }
  }
  const std::vector<Check>& checks() const { return checks_; }
  bool all_pass() const {
    return std::all_of(checks_.begin(), checks_.end(), [](const Check& c) { return c.pass; });
  }

 private:
  std::vector<Check> checks_;
};

std::vector<std::pair<double, double>> validation_points(const RunConfig& c) {
  constexpr std::size_t kSide = 11;
  std::vector<std::pair<double, double>> pts;
  const auto ps = linspace(c.grid.p_min, c.grid.p_max, kSide);
  const auto qs = linspace(c.grid.q_min, c.grid.q_max, kSide);
  for (double p : ps) {
    for (double q : qs) pts.emplace_back(p, q);
  }
  return pts;
}

std::size_t oracle_dim(const RunConfig& c, const SuperpositionSpec& spec) {
  return c.dim ? c.dim : coherence::default_phonon_count(spec, c.reservoir.nbar);
}

bool wants_suite(const RunConfig& c, const std::string& suite) {
  return c.suites.empty() || std::find(c.suites.begin(), c.suites.end(), suite) != c.suites.end();
}

void suite_kernel(const RunConfig& c, CheckList& checks) {
  const SuperpositionSpec spec = c.spec();
  const auto pts = validation_points(c);
  for (const auto& tp : time_points(c)) {
    if (tp.u == 0.0) continue;
    const std::string name = "closed form vs kernel quadrature, u=" + short_number(tp.u);
    checks.guard("kernel", name, [&] {
      const auto conv = oracle::wigner_convolution(spec, c.reservoir, tp.t, pts);
      double err = 0.0;
      for (std::size_t k = 0; k < pts.size(); ++k) {
        err = std::max(err, std::fabs(conv.values[k] - phasespace::wigner_t(spec, c.reservoir, tp.t,
                                                                            pts[k].first, pts[k].second)));
      }
      checks.add("kernel", name, err, c.tolerances.wigner_kernel);
    });
  }
}

void suite_fock_wigner(const RunConfig& c, CheckList& checks) {
  const SuperpositionSpec spec = c.spec();
  const auto pts = validation_points(c);
  for (const auto& tp : time_points(c)) {
    const std::string name = "closed form vs Fock reconstruction, u=" + short_number(tp.u);
    checks.guard("fock-wigner", name, [&] {
      const auto rho0 = oracle::FockDensity::from_vector(states::build_fock_vector(spec, oracle_dim(c, spec)));
      const auto rho = oracle::evolve_density(rho0, c.reservoir, tp.t);
      double err = 0.0;
      for (const auto& [p, q] : pts) {
        err = std::max(err, std::fabs(oracle::wigner_from_density(rho, p, q) -
                                      phasespace::wigner_t(spec, c.reservoir, tp.t, p, q)));
      }
      checks.add("fock-wigner", name, err, c.tolerances.wigner_fock);
    });
  }
}

void suite_jets_and_phonon(const RunConfig& c, CheckList& checks, bool jets, bool phonon) {
  const SuperpositionSpec spec = c.spec();
  const ClosedForm form = c.closed_form();
  for (const auto& tp : time_points(c)) {
    const std::string at = ", u=" + short_number(tp.u);
    checks.guard(jets ? "jets" : "phonon", "Fock evolution" + at, [&] {
      const std::size_t dim = oracle_dim(c, spec);
      const auto rho0 = oracle::FockDensity::from_vector(states::build_fock_vector(spec, dim));
      const auto rho = oracle::evolve_density(rho0, c.reservoir, tp.t);
      if (jets) {
        const double mu_f = oracle::purity(rho);
        const double la_f = oracle::diagonal_purity_fock(rho);
        const double mu = coherence::total_purity(spec, c.reservoir.nbar, tp.u, form);
        const double la = coherence::diagonal_purity(spec, c.reservoir.nbar, tp.u, form);
        checks.add("jets", "total purity rel. error" + at, std::fabs(mu - mu_f) / mu_f, c.tolerances.jets_fock);
        checks.add("jets", "diagonal purity rel. error" + at, std::fabs(la - la_f) / la_f,
                   c.tolerances.jets_fock);
      }
      if (phonon) {
        const auto pf = oracle::populations(rho);
        const auto pj = coherence::phonon_distribution(spec, c.reservoir.nbar, tp.u, pf.size(), form);
        double err = 0.0, sum = 0.0;
        for (std::size_t m = 0; m < pf.size(); ++m) {
          err = std::max(err, std::fabs(pf[m] - pj[m]));
          sum += pj[m];
        }
        checks.add("phonon", "populations max abs error" + at, err, c.tolerances.phonon_fock);
        checks.add("phonon", "population sum defect" + at, std::fabs(sum - 1.0), 1e-8);
      }
    });
  }
}

void suite_quadrature(const RunConfig& c, CheckList& checks) {
  // Small fixed state: the 4D integrals scale with the fourth power of the grid.
  const SuperpositionSpec spec = SuperpositionSpec::circle(0, 2, 1.0);
  const double nbar = c.reservoir.nbar;
  constexpr double u = 0.3;
  oracle::PurityQuadOptions opts;
  opts.tolerance = 0.1 * c.tolerances.quadrature;
  opts.max_nodes = 128;
  checks.guard("quadrature", "total purity 4D", [&] {
    const auto q = oracle::total_purity_quadrature(spec, nbar, u, opts);
    const double mu = coherence::total_purity(spec, nbar, u, c.closed_form());
    checks.add("quadrature", "total purity 4D rel. error (n=0, N=2, |b|=1, u=0.3)", std::fabs(q.value - mu) / mu,
               c.tolerances.quadrature);
  });
  checks.guard("quadrature", "diagonal purity 4D", [&] {
    const auto q = oracle::diagonal_purity_quadrature(spec, nbar, u, opts);
    const double la = coherence::diagonal_purity(spec, nbar, u, c.closed_form());
    checks.add("quadrature", "diagonal purity 4D rel. error (n=0, N=2, |b|=1, u=0.3)",
               std::fabs(q.value - la) / la, c.tolerances.quadrature);
  });
}

void suite_sequence(const RunConfig& c, CheckList& checks) {
  const int n = c.state.excitation, ell = c.state.cycles;
  const std::string name = "sequence infidelity (l=" + std::to_string(ell) + ", n=" + std::to_string(n) + ")";
  checks.guard("sequence", name, [&] {
    const auto target = SuperpositionSpec::from_cycles(n, ell, c.state.beta);
    const std::size_t dim = c.dim ? c.dim : states::default_dim(target);
    const auto res = protocol::run_sequence_oracle(c.protocol, n, ell, protocol_beta(c.protocol, c.state.beta), dim);
    checks.add("sequence", name, 1.0 - res.fidelity, c.tolerances.sequence_infidelity);
    const double ratio = protocol::circle_probability(n, ell, c.state.beta) /
                         protocol::line_probability(n, c.state.beta);
    checks.add("sequence", "cycle probability product residual", std::fabs(res.cumulative_probability - ratio),
               c.tolerances.identity);
  });
}

void suite_protocol(const RunConfig& c, CheckList& checks) {
  const int n = c.state.excitation, ell = c.state.cycles;
  checks.guard("protocol", "identities", [&] {
    const auto target = SuperpositionSpec::from_cycles(n, ell, c.state.beta);
    const double norm = states::normalization_constant(target);
    const double lhs = norm * norm * protocol::circle_probability(n, ell, c.state.beta);
    checks.add("protocol", "|N|^2 P - 2^(-2(l+1))", std::fabs(lhs - std::ldexp(1.0, -2 * (ell + 1))),
               c.tolerances.identity);
    const auto plan = protocol::plan_sequence(c.protocol, n, ell, protocol_beta(c.protocol, c.state.beta));
    checks.add("protocol", "closed-form T - sum t_k (relative)",
               std::fabs(plan.T - plan.T_sum) / std::max(1.0, plan.T), c.tolerances.identity);
  });
}

void print_checks(const std::vector<Check>& checks, std::ostream& log) {
  std::size_t width = 5;
  for (const auto& c : checks) width = std::max(width, c.suite.size() + 2 + c.name.size());
  log << std::left << std::setw(int(width)) << "check" << "  " << std::setw(12) << "value" << "  "
      << std::setw(10) << "tolerance" << "  status\n";
  for (const auto& c : checks) {
    char value[32], tol[32];
    std::snprintf(value, sizeof value, "%.3e", c.value);
    std::snprintf(tol, sizeof tol, "%.1e", c.tolerance);
    log << std::left << std::setw(int(width)) << (c.suite + ": " + c.name) << "  " << std::setw(12) << value
        << "  " << std::setw(10) << tol << "  " << (c.pass ? "PASS" : "FAIL");
    if (!c.note.empty()) log << "  (" << c.note << ")";
    log << '\n';
  }
}

}  // namespace

CommandResult cmd_fig1(const RunConfig& c, std::ostream& log) {
  Outputs outputs(c, "fig1", log);
  const auto xs = linspace(0.0, c.sweep.beta_max, c.sweep.points);
  std::vector<std::string> header{"beta"};
  std::vector<std::vector<double>> columns;
  json curves = json::array();
  for (int n : c.sweep.excitations) {
    header.push_back("P_n" + std::to_string(n));
    auto f = [n](double b) { return protocol::line_probability(n, b); };
    std::vector<double> ys;
    for (double x : xs) ys.push_back(f(x));
    json summary = curve_summary(f, xs, ys);
    summary["excitation"] = n;
    curves.push_back(summary);
    columns.push_back(std::move(ys));
  }
  CsvTable table(header);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    std::vector<double> row{xs[i]};
    for (const auto& col : columns) row.push_back(col[i]);
    table.add_row(row);
  }
  outputs.write_table("fig1.csv", table);
  for (const auto& cv : curves) {
    log << "n=" << cv["excitation"] << ": interior maxima " << cv["maxima"].dump() << '\n';
  }
  return outputs.finish({{"curves", curves}});
}

CommandResult cmd_fig2(const RunConfig& c, std::ostream& log) {
  Outputs outputs(c, "fig2", log);
  const auto xs = linspace(0.0, c.sweep.beta_max, c.sweep.points);
  std::vector<std::string> header{"beta"};
  std::vector<std::vector<double>> columns;
  json curves = json::array();
  for (int ell : c.sweep.cycles) {
    for (int n : c.sweep.excitations) {
      header.push_back("P_l" + std::to_string(ell) + "_n" + std::to_string(n));
      auto f = [n, ell](double b) { return protocol::circle_probability(n, ell, b); };
      std::vector<double> ys;
      for (double x : xs) ys.push_back(f(x));
      json summary = curve_summary(f, xs, ys);
      summary["cycles"] = ell;
      summary["excitation"] = n;
      json spots = json::array();
      for (double b : c.sweep.spot_beta) spots.push_back({{"beta", b}, {"value", f(b)}});
      summary["spot_values"] = spots;
      // Timing plan at the tallest interior maximum.
      const json* best = nullptr;
      for (const auto& m : summary["maxima"]) {
        if (!best || m["value"].get<double>() > (*best)["value"].get<double>()) best = &m;
      }
      if (best) {
        const double b = (*best)["beta"].get<double>();
        summary["plan_at_max"] = plan_json(protocol::plan_sequence(c.protocol, n, ell, protocol_beta(c.protocol, b)));
      }
      curves.push_back(summary);
      columns.push_back(std::move(ys));
    }
  }
  CsvTable table(header);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    std::vector<double> row{xs[i]};
    for (const auto& col : columns) row.push_back(col[i]);
    table.add_row(row);
  }
  outputs.write_table("fig2.csv", table);
  for (const auto& cv : curves) {
    log << "l=" << cv["cycles"] << " n=" << cv["excitation"] << ": interior maxima " << cv["maxima"].dump() << '\n';
  }
  return outputs.finish({{"curves", curves}});
}

CommandResult cmd_fig3(const RunConfig& c, std::ostream& log) {
  Outputs outputs(c, "fig3", log);
  json results = write_wigner_grids(c, parts_for("all"), "fig3", outputs);
  return outputs.finish(std::move(results));
}

CommandResult cmd_wigner(const RunConfig& c, std::ostream& log) {
  Outputs outputs(c, "wigner", log);
  json results = write_wigner_grids(c, parts_for(c.part), "wigner", outputs);
  return outputs.finish(std::move(results));
}

CommandResult cmd_fig4(const RunConfig& c, std::ostream& log) {
  Outputs outputs(c, "fig4", log);
  const std::vector<ClosedForm> forms{ClosedForm::corrected, ClosedForm::as_printed};
  coherence::CoherenceOptions opts;
  opts.include_phonon = false;
  auto measure = [&](int n, int ell, double u, ClosedForm form) {
    opts.form = form;
    return coherence::coherence_at_compact_time(SuperpositionSpec::from_cycles(n, ell, c.state.beta),
                                                c.reservoir.nbar, u, opts);
  };

  std::vector<std::string> header{"u", "gamma_t"};
  for (ClosedForm form : forms) {
    for (int n : c.sweep.excitations) header.push_back("C_n" + std::to_string(n) + "_" + coherence::to_string(form));
  }
  CsvTable table(header);
  std::size_t flagged = 0;
  for (std::size_t k = 0; k < c.sweep.u_points; ++k) {
    const double u = double(k) / double(c.sweep.u_points);
    std::vector<double> row{u, -0.5 * std::log1p(-u)};
    for (ClosedForm form : forms) {
      for (int n : c.sweep.excitations) {
        const auto rep = measure(n, c.state.cycles, u, form);
        flagged += rep.flagged;
        row.push_back(rep.C);
      }
    }
    table.add_row(row);
  }
  outputs.write_table("fig4.csv", table);

  std::set<int> cycles(c.sweep.cycles.begin(), c.sweep.cycles.end());
  cycles.insert(0);
  cycles.insert(c.state.cycles);
  json worked = json::array();
  for (double u : c.sweep.report_u) {
    for (int ell : cycles) {
      for (int n : c.sweep.excitations) {
        json entry = {{"u", u}, {"cycles", ell}, {"excitation", n}};
        for (ClosedForm form : forms) entry["C_" + coherence::to_string(form)] = measure(n, ell, u, form).C;
        worked.push_back(entry);
        log << "u=" << u << " l=" << ell << " n=" << n << ": C=" << entry["C_corrected"].get<double>()
            << " (as printed " << entry["C_as_printed"].get<double>() << ")\n";
      }
    }
  }
  constexpr double kLimitU = 1.0 - 1e-6;
  json limits = json::array();
  for (int n : c.sweep.excitations) {
    limits.push_back({{"u", kLimitU}, {"excitation", n}, {"C_corrected", measure(n, c.state.cycles, kLimitU, ClosedForm::corrected).C}});
  }
  return outputs.finish({{"worked_values", worked}, {"limits", limits}, {"flagged_points", flagged}});
}

CommandResult cmd_coherence(const RunConfig& c, std::ostream& log) {
  Outputs outputs(c, "coherence", log);
  const SuperpositionSpec spec = c.spec();
  coherence::CoherenceOptions opts;
  opts.form = c.closed_form();
  opts.include_phonon = false;
  CsvTable sweep({"u", "gamma_t", "mu", "lambda", "C", "flagged"});
  for (std::size_t k = 0; k < c.sweep.u_points; ++k) {
    const double u = double(k) / double(c.sweep.u_points);
    const auto rep = coherence::coherence_at_compact_time(spec, c.reservoir.nbar, u, opts);
    sweep.add_row(std::vector<double>{u, -0.5 * std::log1p(-u), rep.mu, rep.lambda, rep.C, rep.flagged ? 1.0 : 0.0});
  }
  outputs.write_table("coherence.csv", sweep);

  opts.include_phonon = true;
  opts.phonon_count = c.dim;
  json reports = json::array();
  std::vector<std::vector<double>> pops;
  std::vector<std::string> header{"m"};
  for (const auto& tp : time_points(c)) {
    const auto rep = coherence::coherence_at_compact_time(spec, c.reservoir.nbar, tp.u, opts);
    double total = 0.0;
    for (double p : rep.phonon) total += p;
    reports.push_back({{"u", tp.u},
                       {"gamma_t", tp.gamma_t},
                       {"mu", rep.mu},
                       {"lambda", rep.lambda},
                       {"mu0", rep.mu0},
                       {"lambda0", rep.lambda0},
                       {"C", rep.C},
                       {"flagged", rep.flagged},
                       {"population_sum", total}});
    header.push_back("P_" + tp.label);
    pops.push_back(rep.phonon);
    log << tp.label << ": C=" << rep.C << " mu=" << rep.mu << " lambda=" << rep.lambda << '\n';
  }
  CsvTable table(header);
  for (std::size_t m = 0; m < pops.front().size(); ++m) {
    std::vector<double> row{double(m)};
    for (const auto& p : pops) row.push_back(p[m]);
    table.add_row(row);
  }
  outputs.write_table("phonon.csv", table);
  return outputs.finish({{"form", c.form}, {"reports", reports}});
}

CommandResult cmd_protocol(const RunConfig& c, std::ostream& log) {
  Outputs outputs(c, "protocol", log);
  const int n = c.state.excitation, ell = c.state.cycles;
  const double b = c.state.beta;
  const auto target = SuperpositionSpec::from_cycles(n, ell, b);
  const auto plan = protocol::plan_sequence(c.protocol, n, ell, protocol_beta(c.protocol, b));

  const double p_line = protocol::line_probability(n, b);
  const double p_circle = protocol::circle_probability(n, ell, b);
  const double norm = states::normalization_constant(target);
  const double expected = std::ldexp(1.0, -2 * (ell + 1));
  const double lhs = norm * norm * p_circle;

  json ratio;
  try {
    ratio = protocol::carrier_validity_ratio(target, plan.kappa());
  } catch (const UndefinedRatioError&) {
    ratio = nullptr;
  }

  const std::size_t dim = c.dim ? c.dim : states::default_dim(target);
  const auto res = protocol::run_sequence_oracle(c.protocol, n, ell, plan.beta, dim);

  json results = {
      {"plan", plan_json(plan)},
      {"probabilities", {{"line", p_line}, {"circle", p_circle}}},
      {"identity",
       {{"normalization_sq", norm * norm}, {"lhs", lhs}, {"expected", expected}, {"residual", std::fabs(lhs - expected)}}},
      {"carrier_validity_ratio", ratio},
      {"oracle",
       {{"dim", dim},
        {"fidelity", res.fidelity},
        {"line_probability", res.line_probability},
        {"cycle_probabilities", res.cycle_probabilities},
        {"cumulative_probability", res.cumulative_probability}}}};
  log << "l=" << ell << " n=" << n << " |beta|=" << b << ": T=" << plan.T << " us, T_t=" << plan.T_t
      << " us, P=" << p_circle << ", identity residual=" << std::fabs(lhs - expected)
      << ", oracle fidelity=" << res.fidelity << '\n';
  return outputs.finish(std::move(results));
}

CommandResult cmd_validate(const RunConfig& c, std::ostream& log) {
  Outputs outputs(c, "validate", log);
  CheckList checks;
  if (wants_suite(c, "protocol")) suite_protocol(c, checks);
  if (wants_suite(c, "sequence")) suite_sequence(c, checks);
  if (wants_suite(c, "kernel")) suite_kernel(c, checks);
  if (wants_suite(c, "fock-wigner")) suite_fock_wigner(c, checks);
  const bool jets = wants_suite(c, "jets"), phonon = wants_suite(c, "phonon");
  if (jets || phonon) suite_jets_and_phonon(c, checks, jets, phonon);
  if (wants_suite(c, "quadrature")) suite_quadrature(c, checks);

  print_checks(checks.checks(), log);
  json table = json::array();
  for (const auto& ch : checks.checks()) {
    table.push_back({{"suite", ch.suite},
                     {"check", ch.name},
                     {"value", std::isfinite(ch.value) ? json(ch.value) : json(nullptr)},
                     {"tolerance", ch.tolerance},
                     {"pass", ch.pass},
                     {"note", ch.note}});
  }
  const bool ok = checks.all_pass();
  log << (ok ? "all checks passed\n" : "tolerance breach\n");
  return outputs.finish({{"checks", table}, {"pass", ok}}, ok ? kExitOk : kExitBreach);
}

}  // namespace dncircle::cli
