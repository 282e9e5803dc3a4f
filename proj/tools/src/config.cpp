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

#include "dncircle/cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>
#include <type_traits>

#include "dncircle/cli/io.hpp"
#include "dncircle/errors.hpp"

namespace dncircle::cli {

namespace {

const std::vector<std::string> kSuites = {"kernel", "fock-wigner", "jets", "phonon", "quadrature",
                                          "sequence", "protocol"};
const std::vector<std::string> kParts = {"full", "diagonal", "nondiagonal", "all"};

[[noreturn]] void bad_key(const std::string& path, const std::string& why) {
  throw UsageError("config key '" + path + "': " + why);
}

template <class T>
struct is_vector : std::false_type {};
template <class T>
struct is_vector<std::vector<T>> : std::true_type {};

template <class T>
struct is_optional : std::false_type {};
template <class T>
struct is_optional<std::optional<T>> : std::true_type {};

template <class T>
T convert(const json& v, const std::string& path) {
  if constexpr (std::is_same_v<T, double>) {
    if (!v.is_number()) bad_key(path, "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) bad_key(path, "expected a finite number");
    return d;
  } else if constexpr (std::is_same_v<T, int>) {
    if (!v.is_number_integer()) bad_key(path, "expected an integer");
    return v.get<int>();
  } else if constexpr (std::is_same_v<T, std::size_t> || std::is_same_v<T, unsigned>) {
    if (!v.is_number_integer() || v.get<long long>() < 0) bad_key(path, "expected a non-negative integer");
    return v.get<T>();
  } else if constexpr (std::is_same_v<T, std::string>) {
    if (!v.is_string()) bad_key(path, "expected a string");
    return v.get<std::string>();
  } else if constexpr (is_optional<T>::value) {
    if (v.is_null()) return T{};
    return T{convert<typename T::value_type>(v, path)};
  } else if constexpr (is_vector<T>::value) {
    T out;
    if (!v.is_array()) {
      out.push_back(convert<typename T::value_type>(v, path));
      return out;
    }
    for (std::size_t i = 0; i < v.size(); ++i) {
      out.push_back(convert<typename T::value_type>(v[i], path + "[" + std::to_string(i) + "]"));
    }
    return out;
  } else {
    static_assert(sizeof(T) == 0, "unsupported config field type");
  }
}

template <class T>
json encode(const T& value) {
  if constexpr (is_optional<T>::value) {
    return value ? json(*value) : json(nullptr);
  } else {
    return json(value);
  }
}

struct Field {
  std::string path;
  std::function<void(RunConfig&, const json&)> set;
  std::function<json(const RunConfig&)> get;
};

template <class Access>
Field make_field(std::string path, Access access) {
  Field f;
  f.path = path;
  f.set = [path, access](RunConfig& c, const json& v) {
    using T = std::remove_reference_t<decltype(access(c))>;
    access(c) = convert<T>(v, path);
  };
  f.get = [access](const RunConfig& c) { return encode(access(c)); };
  return f;
}

#define DNC_FIELD(path, member) make_field(path, [](auto& c) -> auto& { return c.member; })

const std::vector<Field>& registry() {
  static const std::vector<Field> fields = {
      DNC_FIELD("state.excitation", state.excitation),
      DNC_FIELD("state.cycles", state.cycles),
      DNC_FIELD("state.components", state.components),
      DNC_FIELD("state.beta", state.beta),
      DNC_FIELD("state.theta1", state.theta1),
      DNC_FIELD("reservoir.omega0", reservoir.omega0),
      DNC_FIELD("reservoir.gamma", reservoir.gamma),
      DNC_FIELD("reservoir.nbar", reservoir.nbar),
      DNC_FIELD("protocol.carrier_rabi", protocol.Lambda),
      DNC_FIELD("protocol.eta", protocol.eta),
      DNC_FIELD("protocol.coupling", protocol.lambda_c),
      DNC_FIELD("protocol.detection_time", protocol.tau_d),
      DNC_FIELD("protocol.phase_blue", protocol.phi_b),
      DNC_FIELD("protocol.phase_red", protocol.phi_r),
      DNC_FIELD("time.gamma_t", time.gamma_t),
      DNC_FIELD("time.u", time.u),
      DNC_FIELD("sweep.excitations", sweep.excitations),
      DNC_FIELD("sweep.cycles", sweep.cycles),
      DNC_FIELD("sweep.beta_max", sweep.beta_max),
      DNC_FIELD("sweep.points", sweep.points),
      DNC_FIELD("sweep.u_points", sweep.u_points),
      DNC_FIELD("sweep.spot_beta", sweep.spot_beta),
      DNC_FIELD("sweep.report_u", sweep.report_u),
      DNC_FIELD("grid.p_min", grid.p_min),
      DNC_FIELD("grid.p_max", grid.p_max),
      DNC_FIELD("grid.q_min", grid.q_min),
      DNC_FIELD("grid.q_max", grid.q_max),
      DNC_FIELD("grid.points", grid.points),
      DNC_FIELD("form", form),
      DNC_FIELD("part", part),
      DNC_FIELD("suites", suites),
      DNC_FIELD("dim", dim),
      DNC_FIELD("threads", threads),
      DNC_FIELD("out", out),
      DNC_FIELD("tolerances.wigner_kernel", tolerances.wigner_kernel),
      DNC_FIELD("tolerances.wigner_fock", tolerances.wigner_fock),
      DNC_FIELD("tolerances.jets_fock", tolerances.jets_fock),
      DNC_FIELD("tolerances.phonon_fock", tolerances.phonon_fock),
      DNC_FIELD("tolerances.quadrature", tolerances.quadrature),
      DNC_FIELD("tolerances.sequence_infidelity", tolerances.sequence_infidelity),
      DNC_FIELD("tolerances.identity", tolerances.identity),
  };
  return fields;
}

#undef DNC_FIELD

bool is_group(const std::string& prefix) {
  const std::string dotted = prefix + ".";
  return std::any_of(registry().begin(), registry().end(),
                     [&](const Field& f) { return f.path.compare(0, dotted.size(), dotted) == 0; });
}

void merge_object(RunConfig& config, const json& object, const std::string& prefix) {
  for (auto it = object.begin(); it != object.end(); ++it) {
    const std::string path = prefix.empty() ? it.key() : prefix + "." + it.key();
    if (is_group(path)) {
      if (!it.value().is_object()) bad_key(path, "expected an object");
      merge_object(config, it.value(), path);
      continue;
    }
    const auto& fields = registry();
    const auto f = std::find_if(fields.begin(), fields.end(), [&](const Field& x) { return x.path == path; });
    if (f == fields.end()) throw UsageError("config: unknown key '" + path + "'");
    f->set(config, it.value());
  }
}

template <class T>
bool contains(const std::vector<T>& xs, const T& x) {
  return std::find(xs.begin(), xs.end(), x) != xs.end();
}

}  // namespace

states::SuperpositionSpec RunConfig::spec() const {
  states::SuperpositionSpec s = state.components > 0
                                    ? states::SuperpositionSpec::circle(state.excitation, state.components,
                                                                        state.beta)
                                    : states::SuperpositionSpec::from_cycles(state.excitation, state.cycles,
                                                                             state.beta);
  if (state.theta1) s.theta1 = *state.theta1;
  return s;
}

coherence::ClosedForm RunConfig::closed_form() const { return coherence::closed_form_from_string(form); }

std::vector<double> RunConfig::compact_times() const {
  if (!time.u.empty()) return time.u;
  std::vector<double> u;
  for (double gt : time.gamma_t) u.push_back(-std::expm1(-2.0 * gt));
  return u;
}

phasespace::PhaseGrid RunConfig::grid_bounds() const {
  phasespace::PhaseGrid g;
  g.p_min = grid.p_min;
  g.p_max = grid.p_max;
  g.q_min = grid.q_min;
  g.q_max = grid.q_max;
  g.np = grid.points;
  g.nq = grid.points;
  return g;
}

void RunConfig::validate() const {
  if (state.excitation < 0 || state.excitation > 50) bad_key("state.excitation", "must lie in [0, 50]");
  if (state.cycles < 0 || state.cycles > 20) bad_key("state.cycles", "must lie in [0, 20]");
  if (state.components < 0) bad_key("state.components", "must be >= 0 (0 derives it from cycles)");
  if (state.beta < 0.0) bad_key("state.beta", "must be >= 0");
  if (!(reservoir.gamma > 0.0)) bad_key("reservoir.gamma", "must be > 0");
  if (reservoir.nbar < 0.0) bad_key("reservoir.nbar", "must be >= 0");
  if (!(protocol.Lambda > 0.0)) bad_key("protocol.carrier_rabi", "must be > 0");
  if (!(protocol.eta > 0.0)) bad_key("protocol.eta", "must be > 0");
  if (!(protocol.lambda_c > 0.0)) bad_key("protocol.coupling", "must be > 0");
  if (protocol.tau_d < 0.0) bad_key("protocol.detection_time", "must be >= 0");
  for (double gt : time.gamma_t) {
    if (gt < 0.0) bad_key("time.gamma_t", "entries must be >= 0");
  }
  for (double u : time.u) {
    if (!(u >= 0.0 && u < 1.0)) bad_key("time.u", "entries must lie in [0, 1)");
  }
  if (time.gamma_t.empty() && time.u.empty()) bad_key("time.gamma_t", "at least one time is required");
  for (int n : sweep.excitations) {
    if (n < 0 || n > 50) bad_key("sweep.excitations", "entries must lie in [0, 50]");
  }
  for (int l : sweep.cycles) {
    if (l < 0 || l > 20) bad_key("sweep.cycles", "entries must lie in [0, 20]");
  }
  if (sweep.excitations.empty()) bad_key("sweep.excitations", "must not be empty");
  if (sweep.cycles.empty()) bad_key("sweep.cycles", "must not be empty");
  if (!(sweep.beta_max > 0.0)) bad_key("sweep.beta_max", "must be > 0");
  if (sweep.points < 3) bad_key("sweep.points", "must be >= 3");
  if (sweep.u_points < 2) bad_key("sweep.u_points", "must be >= 2");
  for (double b : sweep.spot_beta) {
    if (b < 0.0) bad_key("sweep.spot_beta", "entries must be >= 0");
  }
  for (double u : sweep.report_u) {
    if (!(u >= 0.0 && u < 1.0)) bad_key("sweep.report_u", "entries must lie in [0, 1)");
  }
  if (grid.points < 2) bad_key("grid.points", "must be >= 2");
  if (!(grid.p_max > grid.p_min)) bad_key("grid.p_max", "must exceed grid.p_min");
  if (!(grid.q_max > grid.q_min)) bad_key("grid.q_max", "must exceed grid.q_min");
  if (form != "corrected" && form != "as_printed") bad_key("form", "must be 'corrected' or 'as_printed'");
  if (!contains(kParts, part)) bad_key("part", "must be one of full, diagonal, nondiagonal, all");
  for (const auto& s : suites) {
    if (!contains(kSuites, s)) bad_key("suites", "unknown suite '" + s + "'");
  }
  if (out.empty()) bad_key("out", "must not be empty");
  const Tolerances& t = tolerances;
  for (const auto& [key, v] : {std::pair{"wigner_kernel", t.wigner_kernel}, {"wigner_fock", t.wigner_fock},
                               {"jets_fock", t.jets_fock}, {"phonon_fock", t.phonon_fock},
                               {"quadrature", t.quadrature}, {"sequence_infidelity", t.sequence_infidelity},
                               {"identity", t.identity}}) {
    if (!(v > 0.0)) bad_key(std::string("tolerances.") + key, "must be > 0");
  }
  try {
    spec().validate();
  } catch (const UsageError& e) {
    throw UsageError(std::string("config group 'state': ") + e.what());
  }
}

json to_json(const RunConfig& config) {
  json root = json::object();
  for (const auto& f : registry()) {
    json* node = &root;
    std::stringstream parts(f.path);
    std::string part;
    std::vector<std::string> keys;
    while (std::getline(parts, part, '.')) keys.push_back(part);
    for (std::size_t i = 0; i + 1 < keys.size(); ++i) node = &(*node)[keys[i]];
    (*node)[keys.back()] = f.get(config);
  }
  return root;
}

void merge_json(RunConfig& config, const json& patch) {
  if (!patch.is_object()) throw UsageError("config: top level must be a JSON object");
  merge_object(config, patch, "");
}

json load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw UsageError("config file '" + path + "' is not valid JSON: " + e.what());
  }
}

}  // namespace dncircle::cli
