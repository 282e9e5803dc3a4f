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

#include <functional>
#include <vector>

namespace dncircle::cli {

struct Extremum {
  double x = 0.0;
  double value = 0.0;
  bool maximum = true;
};

/// Interior local extrema of f sampled at increasing xs (ys = f(xs)), each
/// refined by Brent's method on the bracketing pair of neighbouring samples.
std::vector<Extremum> locate_extrema(const std::function<double(double)>& f,
                                     const std::vector<double>& xs, const std::vector<double>& ys);

}  // namespace dncircle::cli
