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

#include <iosfwd>
#include <string>
#include <vector>

#include "dncircle/cli/config.hpp"

namespace dncircle::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitBreach = 1;     // validate: a check exceeded its tolerance
inline constexpr int kExitUsage = 2;      // bad flag, config key or value
inline constexpr int kExitIo = 3;         // unreadable config or unwritable output
inline constexpr int kExitNumerical = 4;  // library error during the computation

/// Outcome of one command: exit code plus the sidecar document it wrote.
struct CommandResult {
  int exit_code = kExitOk;
  json sidecar;
};

// Each command writes its outputs under config.out and returns the sidecar.
CommandResult cmd_fig1(const RunConfig& config, std::ostream& log);
CommandResult cmd_fig2(const RunConfig& config, std::ostream& log);
CommandResult cmd_fig3(const RunConfig& config, std::ostream& log);
CommandResult cmd_fig4(const RunConfig& config, std::ostream& log);
CommandResult cmd_protocol(const RunConfig& config, std::ostream& log);
CommandResult cmd_wigner(const RunConfig& config, std::ostream& log);
CommandResult cmd_coherence(const RunConfig& config, std::ostream& log);
CommandResult cmd_validate(const RunConfig& config, std::ostream& log);

/// Full command line without the program name, e.g. {"fig1", "--out", "x"}.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dncircle::cli
