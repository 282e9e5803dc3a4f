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

#include <CLI11.hpp>
#include <algorithm>
#include <functional>
#include <map>
#include <ostream>

#include "dncircle/cli/commands.hpp"
#include "dncircle/cli/io.hpp"
#include "dncircle/errors.hpp"

#ifndef DNCIRCLE_VERSION
#define DNCIRCLE_VERSION "0.0.0"
#endif

namespace dncircle::cli {

namespace {

using Command = CommandResult (*)(const RunConfig&, std::ostream&);

const std::map<std::string, std::pair<Command, const char*>>& commands() {
  static const std::map<std::string, std::pair<Command, const char*>> table = {
      {"fig1", {cmd_fig1, "Line-step no-fluorescence probability curves"}},
      {"fig2", {cmd_fig2, "Circle-protocol probability curves and timing plans"}},
      {"fig3", {cmd_fig3, "Full, diagonal and nondiagonal Wigner grids at each time"}},
      {"fig4", {cmd_fig4, "Coherence measure versus compact time"}},
      {"protocol", {cmd_protocol, "Pulse schedule, probabilities and state-vector check"}},
      {"wigner", {cmd_wigner, "Wigner grids for the configured state and times"}},
      {"coherence", {cmd_coherence, "Purities, coherence sweep and phonon distribution"}},
      {"validate", {cmd_validate, "Run the oracle comparison suites"}},
  };
  return table;
}

// Registers a flag whose value lands at `path` inside `overlay`.
template <class T>
CLI::Option* flag(CLI::App& app, json& overlay, const std::string& name, const std::string& path,
                  const std::string& help) {
  auto* opt = app.add_option_function<T>(
      name,
      [&overlay, path](const T& v) {
        json* node = &overlay;
        std::size_t start = 0, dot;
        while ((dot = path.find('.', start)) != std::string::npos) {
          node = &(*node)[path.substr(start, dot - start)];
          start = dot + 1;
        }
        (*node)[path.substr(start)] = v;
      },
      help);
  if constexpr (std::is_same_v<T, std::vector<double>> || std::is_same_v<T, std::vector<int>> ||
                std::is_same_v<T, std::vector<std::string>>) {
    opt->delimiter(',');
  }
  return opt;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Displaced-number-state circle superpositions: protocol, phase-space dynamics and coherence",
               "dncircle"};
  app.set_version_flag("--version", DNCIRCLE_VERSION);
  app.require_subcommand(1);
  app.fallthrough();

  json overlay = json::object();
  std::string config_path;
  double extent = 0.0;
  app.add_option("--config", config_path, "JSON config file (defaults < file < flags)");
  flag<std::string>(app, overlay, "--out", "out", "Output directory");
  flag<int>(app, overlay, "--excitation", "state.excitation", "Excitation degree n");
  flag<int>(app, overlay, "--cycles", "state.cycles", "Carrier cycles l (N = 2^(l+1))");
  flag<int>(app, overlay, "--components", "state.components", "Component count N (overrides --cycles)");
  flag<double>(app, overlay, "--beta", "state.beta", "Displacement modulus |beta|");
  flag<double>(app, overlay, "--theta1", "state.theta1", "Phase of the first component");
  flag<double>(app, overlay, "--omega0", "reservoir.omega0", "Trap frequency");
  flag<double>(app, overlay, "--gamma", "reservoir.gamma", "Damping rate");
  flag<double>(app, overlay, "--nbar", "reservoir.nbar", "Thermal occupation");
  auto* gamma_t = flag<std::vector<double>>(app, overlay, "--gamma-t", "time.gamma_t", "Times as gamma*t, comma separated");
  auto* compact = flag<std::vector<double>>(app, overlay, "--compact-time", "time.u", "Compact times u in [0,1)");
  flag<double>(app, overlay, "--carrier-rabi", "protocol.carrier_rabi", "Carrier Rabi frequency (rad/us)");
  flag<double>(app, overlay, "--eta", "protocol.eta", "Sideband Lamb-Dicke parameter");
  flag<double>(app, overlay, "--coupling", "protocol.coupling", "Coupling constant (rad/us)");
  flag<double>(app, overlay, "--detection-time", "protocol.detection_time", "Detection time (us)");
  flag<double>(app, overlay, "--phase-blue", "protocol.phase_blue", "Blue laser phase");
  flag<double>(app, overlay, "--phase-red", "protocol.phase_red", "Red laser phase");
  flag<std::vector<int>>(app, overlay, "--sweep-excitations", "sweep.excitations", "Excitations for figure sweeps");
  flag<std::vector<int>>(app, overlay, "--sweep-cycles", "sweep.cycles", "Cycle counts for fig2");
  flag<double>(app, overlay, "--beta-max", "sweep.beta_max", "Upper end of |beta| sweeps");
  flag<std::size_t>(app, overlay, "--points", "sweep.points", "Samples per |beta| sweep");
  flag<std::size_t>(app, overlay, "--u-points", "sweep.u_points", "Samples of u in [0,1)");
  flag<std::vector<double>>(app, overlay, "--spot-beta", "sweep.spot_beta", "Extra |beta| values reported by fig2");
  flag<std::vector<double>>(app, overlay, "--report-u", "sweep.report_u", "Compact times tabulated by fig4");
  flag<std::size_t>(app, overlay, "--grid", "grid.points", "Grid points per phase-space axis");
  auto* extent_opt = app.add_option("--extent", extent, "Symmetric grid half-width in p and q");
  flag<std::string>(app, overlay, "--form", "form", "Closed form: corrected or as_printed");
  flag<std::string>(app, overlay, "--part", "part", "Wigner part: full, diagonal, nondiagonal or all");
  flag<std::vector<std::string>>(app, overlay, "--suite", "suites", "Validation suites to run");
  flag<std::size_t>(app, overlay, "--dim", "dim", "Fock truncation (0 = automatic)");
  flag<unsigned>(app, overlay, "--threads", "threads", "Worker threads (0 = all cores)");

  for (const auto& [name, entry] : commands()) app.add_subcommand(name, entry.second);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << DNCIRCLE_VERSION << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (*extent_opt) {
      if (!(extent > 0.0)) throw UsageError("--extent must be > 0");
      overlay["grid"]["p_min"] = -extent;
      overlay["grid"]["p_max"] = extent;
      overlay["grid"]["q_min"] = -extent;
      overlay["grid"]["q_max"] = extent;
    }
    // The later of two competing settings wins.
    if (*gamma_t && !*compact) overlay["time"]["u"] = json::array();
    if (overlay.contains("state") && overlay["state"].contains("cycles") && !overlay["state"].contains("components")) {
      overlay["state"]["components"] = 0;
    }

    RunConfig config;
    if (!config_path.empty()) merge_json(config, load_config_file(config_path));
    merge_json(config, overlay);
    config.validate();

    const auto chosen = app.get_subcommands().front()->get_name();
    return commands().at(chosen).first(config, out).exit_code;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
}

}  // namespace dncircle::cli
