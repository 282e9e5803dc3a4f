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

#include "dncircle/cli/extrema.hpp"

#include <boost/math/tools/minima.hpp>
#include <limits>

#include "dncircle/errors.hpp"

namespace dncircle::cli {

std::vector<Extremum> locate_extrema(const std::function<double(double)>& f,
                                     const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size()) throw UsageError("locate_extrema: xs and ys differ in length");
  constexpr int kBits = std::numeric_limits<double>::digits / 2;
  std::vector<Extremum> found;
  for (std::size_t i = 1; i + 1 < xs.size(); ++i) {
    const bool is_max = ys[i] > ys[i - 1] && ys[i] >= ys[i + 1];
    const bool is_min = ys[i] < ys[i - 1] && ys[i] <= ys[i + 1];
    if (!is_max && !is_min) continue;
    const double sign = is_max ? -1.0 : 1.0;
    auto objective = [&](double x) { return sign * f(x); };
    const auto [x, v] = boost::math::tools::brent_find_minima(objective, xs[i - 1], xs[i + 1], kBits);
    found.push_back({x, sign * v, is_max});
  }
  return found;
}

}  // namespace dncircle::cli
