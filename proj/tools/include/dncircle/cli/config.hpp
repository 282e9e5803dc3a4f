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
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "dncircle/coherence.hpp"
#include "dncircle/phasespace.hpp"
#include "dncircle/protocol.hpp"
#include "dncircle/states.hpp"

namespace dncircle::cli {

using json = nlohmann::ordered_json;

struct StateConfig {
  int excitation = 2;
  int cycles = 2;
  int components = 0;  // 0: derived from cycles as 2^(cycles+1)
  double beta = 3.03;
  std::optional<double> theta1;  // unset: circle convention 2 pi / N
};

struct TimeConfig {
  std::vector<double> gamma_t{0.0, 0.1};
  std::vector<double> u;  // when non-empty, replaces gamma_t
};

struct SweepConfig {
  std::vector<int> excitations{0, 1, 2};
  std::vector<int> cycles{1, 2};
  double beta_max = 4.0;
  std::size_t points = 401;
  std::size_t u_points = 100;
  std::vector<double> spot_beta{1.27};
  std::vector<double> report_u{0.2};
};

struct GridConfig {
  double p_min = -6.5, p_max = 6.5;
  double q_min = -6.5, q_max = 6.5;
  std::size_t points = 261;
};

struct Tolerances {
  double wigner_kernel = 1e-6;
  double wigner_fock = 1e-5;
  double jets_fock = 1e-4;
  double phonon_fock = 1e-5;
  double quadrature = 1e-5;
  double sequence_infidelity = 1e-8;
  double identity = 1e-12;
};

/// Fully resolved settings for one CLI invocation.
struct RunConfig {
  StateConfig state;
  phasespace::ReservoirParams reservoir{1.0, 1.0, 1.0};
  protocol::ProtocolParams protocol;
  TimeConfig time;
  SweepConfig sweep;
  GridConfig grid;
  std::string form = "corrected";
  std::string part = "full";
  std::vector<std::string> suites;  // validate; empty selects every suite
  std::size_t dim = 0;              // Fock truncation, 0 = automatic
  unsigned threads = 0;             // 0 = hardware concurrency
  std::string out = ".";
  Tolerances tolerances;

  states::SuperpositionSpec spec() const;
  coherence::ClosedForm closed_form() const;
  /// Compact times requested through time.u or time.gamma_t.
  std::vector<double> compact_times() const;
  phasespace::PhaseGrid grid_bounds() const;

  /// Throws UsageError naming the offending key.
  void validate() const;
};

/// Nested JSON mirror of RunConfig; feeding it back through merge_json
/// reproduces the same configuration.
json to_json(const RunConfig& config);

/// Applies every key present in `patch`. Unknown keys and wrong types throw
/// UsageError with the dotted key path.
void merge_json(RunConfig& config, const json& patch);

/// Parses a JSON config file. Throws IoError when unreadable and UsageError
/// when malformed.
json load_config_file(const std::string& path);

}  // namespace dncircle::cli
